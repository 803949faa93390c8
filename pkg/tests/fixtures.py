"""Hand-written modules used as decomposition fixtures."""

import numpy as np

from configph.closed_form_oracle import star_region
from configph.persistence_module import PersistenceModule


def region_ids(arr) -> dict[str, int]:
    return {star_region(c.sample.r, c.sample.L): c.id for c in arr.chambers}


def y_reference_module(arr, p: int) -> PersistenceModule:
    """Degree-0 module of the Y graph written from the reference bases and maps of the catalog.

    Bases: A1 <c1>; B1 <c1,c3,c4,c6>; C1 <c1,c4>; A2 <x,y>; B2 <c1..c6>;
    C2 <c1,c2,c4,c5>; B3 <c3,c6>; C3 = 0. Each matrix sends basis vectors of the
    source to basis vectors of the target.
    """
    ids = region_ids(arr)
    dims = {"A1": 1, "B1": 4, "C1": 2, "A2": 2, "B2": 6, "C2": 4, "B3": 2, "C3": 0}

    def send(src, dst, images):
        m = np.zeros((dims[dst], dims[src]), dtype=np.int64)
        for j, i in enumerate(images):
            m[i, j] = 1
        return m

    named = {
        ("C2", "C1"): send("C2", "C1", [0, 0, 1, 1]),
        ("C2", "B2"): send("C2", "B2", [0, 1, 3, 4]),
        ("C1", "B1"): send("C1", "B1", [0, 2]),
        ("B3", "B2"): send("B3", "B2", [2, 5]),
        ("B2", "B1"): send("B2", "B1", [0, 0, 1, 2, 2, 3]),
        ("B2", "A2"): send("B2", "A2", [1, 0, 0, 0, 1, 1]),
        ("B1", "A1"): send("B1", "A1", [0, 0, 0, 0]),
        ("A2", "A1"): send("A2", "A1", [0, 0]),
    }
    name_of = {v: k for k, v in ids.items()}
    maps = {}
    for w in arr.walls:
        key = (name_of[w.source], name_of[w.target])
        maps[(w.source, w.target)] = named.get(key, np.zeros((dims[key[1]], dims[key[0]]), dtype=np.int64))
    return PersistenceModule(arr, {ids[k]: d for k, d in dims.items()}, maps, p, 0)
