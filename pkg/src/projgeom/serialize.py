"""JSON forms of flats, Moulton elements, chains and collineations.

A flat is ``{"ring": tag, "rank": r, "rows": [[scalar strings]]}`` with rows
in canonical echelon form.  Moulton points and lines use their string forms
(``"x,y"``, ``"inf:m"``, ``"x=c"``, ``"m,b"``, ``"inf"``).
"""
from __future__ import annotations

from typing import Any

from . import moulton as mo
from .collineations import CentralAxialCollineation
from .flats import Flat, canonicalize
from .projectivities import AxialPerspectivity, Perspectivity, PerspectivityChain
from .scalars import ring_from_tag


def flat_to_json(f: Flat) -> dict:
    return {
        "ring": f.ring.tag,
        "rank": f.rank,
        "rows": [[f.ring.format(x) for x in row] for row in f.rows],
    }


def flat_from_json(data: dict) -> Flat:
    ring = ring_from_tag(data["ring"])
    rows = [[ring.parse(str(x)) for x in row] for row in data["rows"]]
    f = canonicalize(rows, ring)
    if "rank" in data and data["rank"] != f.rank:
        raise ValueError(f"declared rank {data['rank']} but generators span rank {f.rank}")
    return f


def is_flat_json(data: Any) -> bool:
    return isinstance(data, dict) and "rows" in data and "ring" in data


def element_to_json(x):
    """Flats become dicts; Moulton elements become strings; the rest passes."""
    if isinstance(x, Flat):
        return flat_to_json(x)
    if isinstance(x, (mo.MoultonPoint, mo.MoultonLine)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [element_to_json(y) for y in x]
    return x


def moulton_point_from_json(text: str) -> mo.MoultonPoint:
    return mo.parse_point(text)


def moulton_line_from_json(text: str) -> mo.MoultonLine:
    return mo.parse_line(text)


def perspectivity_to_json(p: Perspectivity) -> dict:
    return {"center": flat_to_json(p.center), "source": flat_to_json(p.source),
            "target": flat_to_json(p.target)}


def perspectivity_from_json(data: dict) -> Perspectivity:
    return Perspectivity(flat_from_json(data["center"]), flat_from_json(data["source"]),
                         flat_from_json(data["target"]))


def chain_to_json(chain: PerspectivityChain) -> dict:
    return {"kind": "chain", "ring": chain.source.ring.tag,
            "links": [perspectivity_to_json(p) for p in chain.links]}


def chain_from_json(data: dict) -> PerspectivityChain:
    links = data.get("links")
    if not links:
        raise ValueError("chain file has no links")
    chain = PerspectivityChain(perspectivity_from_json(p) for p in links)
    if "ring" in data and chain.source.ring.tag != data["ring"]:
        raise ValueError("chain elements do not belong to the declared ring")
    return chain


def axial_to_json(ap: AxialPerspectivity) -> dict:
    return {"kind": "axial", "axis": flat_to_json(ap.axis), "source": flat_to_json(ap.source),
            "target": flat_to_json(ap.target)}


def axial_from_json(data: dict) -> AxialPerspectivity:
    return AxialPerspectivity(flat_from_json(data["axis"]), flat_from_json(data["source"]),
                              flat_from_json(data["target"]))


def collineation_to_json(k: CentralAxialCollineation) -> dict:
    return {"center": flat_to_json(k.center), "axis": flat_to_json(k.axis),
            "point": flat_to_json(k.A), "image": flat_to_json(k.A2)}


def collineation_from_json(data: dict) -> CentralAxialCollineation:
    return CentralAxialCollineation(flat_from_json(data["center"]), flat_from_json(data["axis"]),
                                    flat_from_json(data["point"]), flat_from_json(data["image"]))
