"""Radio contacts and finite-bandwidth transfers."""
