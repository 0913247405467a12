import random

from dtnsim.store import Buffer, DropReason, InsertStatus, Message


def _msg(message_id: str, size: int = 100, created_at: float = 0.0, ttl: float = 60.0) -> Message:
    return Message.create(message_id, source=0, destination=9, size=size, created_at=created_at, ttl=ttl)


def test_insert_accounts_occupancy():
    buffer = Buffer(1000)
    assert buffer.insert(_msg("a", 300), now=0).accepted
    assert buffer.insert(_msg("b", 200), now=0).accepted
    assert buffer.occupancy == 500
    assert [m.id for m in buffer] == ["a", "b"]
    assert buffer.occupancy == buffer.recount()


def test_eviction_drops_oldest_received_first():
    buffer = Buffer(1000)
    buffer.insert(_msg("a", 400), now=0)
    buffer.insert(_msg("b", 400), now=5)
    result = buffer.insert(_msg("c", 400, created_at=10), now=10)

    assert result.accepted
    assert [drop.message.id for drop in result.dropped] == ["a"]
    assert result.dropped[0].reason == DropReason.BUFFER
    assert result.dropped[0].residence == 10.0
    assert [m.id for m in buffer] == ["b", "c"]
    assert buffer.occupancy == 800


def test_eviction_skips_copies_in_flight():
    buffer = Buffer(1000)
    buffer.insert(_msg("a", 400), now=0)
    buffer.insert(_msg("b", 400), now=0)
    buffer.in_flight.add("a")
    result = buffer.insert(_msg("c", 400), now=1)
    assert [drop.message.id for drop in result.dropped] == ["b"]
    assert "a" in buffer


def test_insert_rejected_when_only_in_flight_copies_could_make_room():
    buffer = Buffer(1000)
    buffer.insert(_msg("a", 900), now=0)
    buffer.in_flight.add("a")
    result = buffer.insert(_msg("b", 500), now=1)
    assert result.status == InsertStatus.REJECTED_FULL
    assert result.dropped == ()
    assert "a" in buffer and "b" not in buffer


def test_oversize_and_duplicate_rejected():
    buffer = Buffer(1000)
    assert buffer.insert(_msg("big", 1001), now=0).status == InsertStatus.REJECTED_OVERSIZE
    buffer.insert(_msg("a"), now=0)
    assert buffer.insert(_msg("a"), now=1).status == InsertStatus.REJECTED_DUPLICATE
    assert len(buffer) == 1


def test_expiry_is_strict():
    buffer = Buffer(1000)
    buffer.insert(_msg("a", created_at=0, ttl=60), now=0)
    assert buffer.expire(60.0) == []
    drops = buffer.expire(60.5)
    assert [d.message.id for d in drops] == ["a"]
    assert drops[0].reason == DropReason.EXPIRED
    assert buffer.occupancy == 0


def test_delivery_removal_is_not_a_drop():
    buffer = Buffer(1000)
    buffer.insert(_msg("a"), now=0)
    assert buffer.remove_on_delivery("a").id == "a"
    assert buffer.remove_on_delivery("a") is None
    assert buffer.occupancy == 0


def test_replace_updates_copy_in_place():
    buffer = Buffer(1000)
    buffer.insert(_msg("a"), now=0)
    buffer.insert(_msg("b"), now=0)
    buffer.replace(buffer.get("a").with_copies(4))
    assert buffer.get("a").copies_remaining == 4
    assert [m.id for m in buffer] == ["a", "b"]


def test_relayed_copy_extends_hop_path():
    original = Message.create("SOS1", source=3, destination=7, size=10, created_at=5.0, ttl=100.0, copies=16)
    copy = original.relayed_to(4, now=9.0, copies=8)
    assert original.hop_path == (3,)
    assert copy.hop_path == (3, 4)
    assert copy.hop_count == 1
    assert copy.received_at == 9.0
    assert copy.copies_remaining == 8
    assert copy.created_at == 5.0


def test_addressed_to_follows_receive_order():
    buffer = Buffer(1000)
    buffer.insert(Message.create("a", source=0, destination=4, size=10, created_at=0.0, ttl=60.0), now=0)
    buffer.insert(Message.create("b", source=0, destination=7, size=10, created_at=0.0, ttl=60.0), now=1)
    buffer.insert(Message.create("c", source=0, destination=4, size=10, created_at=0.0, ttl=60.0), now=2)
    assert [m.id for m in buffer.addressed_to(4)] == ["a", "c"]
    buffer.remove_on_delivery("a")
    assert [m.id for m in buffer.addressed_to(4)] == ["c"]
    assert buffer.addressed_to(9) == []


def test_occupancy_survives_random_operations():
    rng = random.Random(42)
    for _ in range(50):
        buffer = Buffer(rng.randint(1_000, 5_000))
        now = 0.0
        serial = 0
        for _ in range(200):
            now += rng.uniform(0.0, 5.0)
            op = rng.random()
            if op < 0.6:
                serial += 1
                message = Message.create(
                    f"m{serial}",
                    source=0,
                    destination=rng.randint(1, 4),
                    size=rng.randint(1, 2_000),
                    created_at=now,
                    ttl=rng.uniform(5.0, 60.0),
                )
                buffer.insert(message, now)
            elif op < 0.8:
                buffer.expire(now)
            elif len(buffer):
                held = [m.id for m in buffer]
                buffer.remove_on_delivery(rng.choice(held))

            if len(buffer) and rng.random() < 0.2:
                buffer.in_flight = {rng.choice([m.id for m in buffer])}

            assert 0 <= buffer.occupancy <= buffer.capacity
            assert buffer.occupancy == buffer.recount()
            by_destination = sorted(m.id for d in range(1, 5) for m in buffer.addressed_to(d))
            assert by_destination == sorted(m.id for m in buffer)
            if 0.6 <= op < 0.8:
                assert not any(m.is_expired(now) for m in buffer)
