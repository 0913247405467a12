"""
Router registry: factory pattern for getting the right router.
"""
from dtnsim.routing.base import Router
from dtnsim.routing.epidemic import EpidemicRouter
from dtnsim.routing.spray_and_wait import SprayAndWaitRouter
from dtnsim.scenario.models import RouterKind, RouterVariant

_ROUTERS: dict[str, type[Router]] = {
    RouterVariant.EPIDEMIC.value: EpidemicRouter,
    RouterVariant.SPRAY_AND_WAIT.value: SprayAndWaitRouter,
}


def get_router(kind: RouterKind) -> Router:
    """Build the router instance for a scenario's router selection."""
    router_cls = _ROUTERS.get(kind.variant)
    if router_cls is None:
        raise ValueError(f"unknown router '{kind.variant}'")
    return router_cls(kind)


def get_supported_routers() -> list[str]:
    """Return list of supported router names."""
    return list(_ROUTERS)
