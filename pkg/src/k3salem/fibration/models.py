"""The concrete fibrations: pi on X(p), the two alternative pencils, and the rational surface Y."""
from __future__ import annotations

from functools import lru_cache

from ..errors import ConsistencyError
from ..exact import Matrix, Polynomial
from ..ns_model import (
    CurveRecord, LatticeModel, NSModel, class_from_intersections, curve_graph, curve_table,
)
from .configs import AdeConfig, find_ade_configurations, induce_fibration
from .kodaira import classify_kodaira
from .sections import FibrationData, fibration_from_curves

# y^2 = x^3 + t^3 (t - 1)^2 x on X(p), y^2 = x^3 + t (t - 1)^2 x on Y
X_COEFF = Polynomial((0, 0, 0, 1)) * Polynomial((-1, 1)) ** 2
Y_COEFF = Polynomial((0, 1)) * Polynomial((-1, 1)) ** 2

# the cycles spanning the I16 fiber of pi' and the I12 fiber of pi''
PI1_CYCLE = ("e7", "e9", "e10", "a_inf", "O", "a0", "e17", "e16", "e14", "e13", "e12", "e11",
             "Q", "e4", "e5", "e6")
PI2_CYCLE = ("e7", "e9", "e10", "a_inf", "O", "d3", "e18", "e19", "Q", "e4", "e5", "e6")
ALT_ZERO = "e8"


def _kinds(a: Polynomial) -> dict[str, str]:
    return {pl.position: pl.kind for pl in classify_kodaira(a)}


@lru_cache(maxsize=32)
def standard_fibration(model: NSModel) -> FibrationData:
    """pi: 2 III* + I0* with zero section O and known sections Q, P, R."""
    return fibration_from_curves(model, curve_table(model), model.unit("F"), "O", "pi",
                                 chi=2, kinds=_kinds(X_COEFF))


def _cycle_config(configs, cycle) -> AdeConfig:
    want = set(cycle)
    for cfg in configs:
        if set(cfg.labels) == want:
            return cfg
    raise ConsistencyError(f"no extended Dynkin configuration on {sorted(want)}")


@lru_cache(maxsize=32)
def alternative_fibrations(model: NSModel) -> tuple[FibrationData, FibrationData]:
    """pi' (I16 + I4) and pi'' (I12 + IV*), both with zero section e8."""
    graph = curve_graph(model)
    configs = find_ade_configurations(graph, model)
    out = []
    for name, cycle in (("pi'", PI1_CYCLE), ("pi''", PI2_CYCLE)):
        cfg = _cycle_config(configs, cycle)
        out.append(induce_fibration(cfg, graph, model, zero_label=ALT_ZERO, name=name))
    return out[0], out[1]


def fibration_by_name(model: NSModel, name: str) -> FibrationData:
    if name == "pi":
        return standard_fibration(model)
    p1, p2 = alternative_fibrations(model)
    return {"pi'": p1, "pi''": p2}[name]


# ---------------------------------------------------------------------------
# rational elliptic surface Y: III at 0 and infinity, I0* at 1

Y_LABELS = ("O", "F", "Q", "Tinf", "c", "l1", "l2", "l3", "P'", "R'")
_Y_SECTIONS = ("O", "Q", "P'", "R'")
_Y_EDGES = [("c", "l1"), ("c", "l2"), ("c", "l3"), ("Q", "Tinf"), ("Q", "l3"),
            ("P'", "l1"), ("R'", "l2")]


def y_gram() -> Matrix:
    idx = {l: i for i, l in enumerate(Y_LABELS)}
    g = [[0] * 10 for _ in range(10)]
    for lab in Y_LABELS:
        if lab != "F":
            g[idx[lab]][idx[lab]] = -1 if lab in _Y_SECTIONS else -2
    for s in _Y_SECTIONS:
        g[idx[s]][idx["F"]] = g[idx["F"]][idx[s]] = 1
    for a, b in _Y_EDGES:
        g[idx[a]][idx[b]] = g[idx[b]][idx[a]] = 1
    return Matrix(g)


def rational_fixture() -> tuple[LatticeModel, list[CurveRecord]]:
    """Lattice model of Y and its known curves.

    T0, the non-identity component of the III fiber at t = 0, is not a basis
    member; it is the class meeting Q, P', R' once and everything else zero.
    """
    model = LatticeModel(Y_LABELS, y_gram())
    u, F = model.unit, model.unit("F")
    t0 = class_from_intersections(model, [1 if l in ("Q", "P'", "R'") else 0 for l in Y_LABELS])

    def sub(*vs):
        out = list(F)
        for c, v in vs:
            out = [o - c * x for o, x in zip(out, v)]
        return tuple(out)

    recs = [CurveRecord(s, u(s), "section") for s in _Y_SECTIONS]
    recs += [
        CurveRecord("Tinf", u("Tinf"), "fiber-component", "t=inf", 1),
        CurveRecord("Zinf", sub((1, u("Tinf"))), "fiber-component", "t=inf", 1),
        CurveRecord("T0", t0, "fiber-component", "t=0", 1),
        CurveRecord("Z0", sub((1, t0)), "fiber-component", "t=0", 1),
        CurveRecord("c", u("c"), "fiber-component", "t=1", 2),
    ]
    recs += [CurveRecord(l, u(l), "fiber-component", "t=1", 1) for l in ("l1", "l2", "l3")]
    recs.append(CurveRecord("l0", sub((2, u("c")), (1, u("l1")), (1, u("l2")), (1, u("l3"))),
                            "fiber-component", "t=1", 1))
    return model, recs


def rational_fibration() -> FibrationData:
    model, recs = rational_fixture()
    return fibration_from_curves(model, recs, model.unit("F"), "O", "Y", chi=1, kinds=_kinds(Y_COEFF))
