"""Small diagrams of known manifolds, shipped as ``.jdiag`` files."""

from __future__ import annotations

from importlib import resources

from ..group import AbelianGroup

# name -> (manifold, first homology)
CATALOG = {
    "shima_a": ("S^3", AbelianGroup(0)),
    "shima_b": ("S^3", AbelianGroup(0)),
    "shima_c": ("S^3", AbelianGroup(0)),
    "audi": ("S^2 x S^1", AbelianGroup(1)),
    "star_L31": ("L(3,1)", AbelianGroup(0, (3,))),
}


def names() -> list[str]:
    return list(CATALOG)


def text(name: str) -> str:
    if name not in CATALOG:
        raise KeyError(f"no fixture named {name!r}; have {', '.join(CATALOG)}")
    return resources.files(__name__).joinpath(f"{name}.jdiag").read_text()


def load(name: str):
    from ..io import parse_diagram

    return parse_diagram(text(name))
