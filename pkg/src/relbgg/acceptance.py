"""The acceptance suite: eleven exact checks with time budgets.

Each ``criterion_N`` returns a :class:`Criterion`.  The ``detail`` field is
deterministic; timings are kept apart so that two runs can be compared byte
for byte.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from . import bggmachine as bm
from . import homology as hom
from . import pathgeom as pg
from .parabolic import build_pair
from .repn import adjoint_module
from .rootdata import weight


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    detail: dict
    seconds: float = 0.0
    budget: float = 0.0

    def line(self, timings: bool = False) -> str:
        s = f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"
        if timings:
            s += f" ({self.seconds:.2f}s, budget {self.budget:g}s)"
        return s

    def to_json(self, timings: bool = False) -> dict:
        out = {"number": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
            out["budget"] = self.budget
        return out


# (rank, crossed_p, crossed_q, highest weight)
BATTERY = [
    (2, (), (1,), (0, 0)),
    (2, (), (1,), (1, 0)),
    (2, (), (1, 2), (1, 1)),
    (2, (), (1, 2), (2, 0)),
    (2, (1,), (1, 2), ("1/2", 1)),
    (3, (1,), (1, 2), (0, 0, 0)),
    (3, (1,), (1, 2), (0, 1, 0)),
    (3, (1,), (1, 2), (1, 1, 1)),
    (3, (1,), (1, 2), (-1, 0, 0)),
    (3, (1,), (1, 2), ("1/2", 1, 2)),
    (3, (), (1, 2), (1, 0, 0)),
    (3, (), (1, 2), (1, 0, 1)),
    (3, (), (1, 2, 3), (0, 0, 0)),
    (3, (), (1, 2, 3), (1, 0, 0)),
    (3, (2,), (1, 2, 3), (1, "-3/2", 1)),
    (3, (1, 3), (1, 2, 3), (2, 1, -1)),
]

PATH_WEIGHTS = [
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (-1, 0, 0),
    (-2, 1, 0), (-3, 0, 1), (2, 0, 1), (-1, 1, 1), (-4, 1, 1), (0, 2, 0),
]
BOREL_WEIGHTS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1)]

MACHINE_COMPLEXES = [
    (3, (1,), (1, 2), (0, 1, 0)),
    (3, (1,), (1, 2), (1, 1, 1)),
    (2, (), (1, 2), (1, 1)),
    (2, (), (1,), (1, 1)),
    (2, (), (1, 2), (0, 0)),
]
SEEDS = (1, 2)


def _label(case) -> str:
    r, cp, cq, lam = case
    return f"A{r} p={list(cp)} q={list(cq)} hw=({','.join(str(x) for x in lam)})"


def _complex(case):
    r, cp, cq, lam = case
    return hom.complex_for(build_pair(r, cp, cq), weight(*lam))


def _timed(number: int, name: str, budget: float, fn: Callable[[], tuple]) -> Criterion:
    t = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return Criterion(number, name, bool(passed), detail, time.perf_counter() - t, budget)


# ---------------------------------------------------------------------------


def _square_zero():
    bad = []
    for case in BATTERY:
        cx = _complex(case)
        ok = all((cx.dstar(k - 1) @ cx.dstar(k)).is_zero() for k in range(2, cx.top + 1))
        ok = ok and all((cx.d(k + 1) @ cx.d(k)).is_zero() for k in range(cx.top - 1))
        if not ok:
            bad.append(_label(case))
    return not bad, {"instances": len(BATTERY), "failures": bad}


def criterion_1() -> Criterion:
    return _timed(1, "differential identities d^2 = 0 and d*^2 = 0", 10, _square_zero)


def _hodge():
    bad = []
    for case in BATTERY:
        cx = _complex(case)
        for k in range(cx.top + 1):
            if not hom.hodge_report(cx, k).ok:
                bad.append(f"{_label(case)} degree {k}")
    return not bad, {"instances": len(BATTERY), "failures": bad}


def criterion_2() -> Criterion:
    return _timed(2, "Hodge decomposition im d* + ker box + im d", 10, _hodge)


def _kostant():
    bad = []
    cases = [(3, (1,), (1, 2), w) for w in PATH_WEIGHTS] + [(2, (), (1, 2), w) for w in BOREL_WEIGHTS]
    for case in cases:
        r, cp, cq, lam = case
        pair = build_pair(r, cp, cq)
        cx = _complex(case)
        h = hom.homology(cx)
        got = [h.weights(k) for k in range(cx.top + 1)]
        if got != hom.kostant_predict(pair, weight(*lam)) or not h.consistent:
            bad.append(_label(case))
    return not bad, {"path_pair": len(PATH_WEIGHTS), "borel": len(BOREL_WEIGHTS), "failures": bad}


def criterion_3() -> Criterion:
    return _timed(3, "relative Kostant theorem", 60, _kostant)


def _kunneth():
    out = {}
    ok = True
    for name, lam in (("trivial", (0, 0, 0)), ("standard", (1, 0, 0)), ("adjoint", (1, 0, 1))):
        for cp, cq in (((1,), (1, 2)), ((1,), (1, 2, 3)), ((2,), (1, 2, 3))):
            r = hom.kunneth_compare(3, cp, cq, weight(*lam))
            out[f"{name} p={list(cp)} q={list(cq)}"] = [sum(c.values()) for c in r["left"]] if r["equal"] else "mismatch"
            ok = ok and r["equal"]
    return ok, out


def criterion_4() -> Criterion:
    return _timed(4, "Kunneth identity for sl(4)", 120, _kunneth)


def _operators():
    for case in MACHINE_COMPLEXES:
        cx = _complex(case)
        for k in range(cx.top):
            for seed in SEEDS:
                yield case, cx, bm.make_compressable(cx, k, seed)


def _splitting():
    bad, n = [], 0
    for case, cx, op in _operators():
        n += 1
        v = bm.splitting_checks(cx, op)
        poly = bm.splitting_operator(cx, op)
        if poly.evaluate(bm.p_operator(cx, op)) != poly.matrix:
            v.checks["recorded polynomial reproduces S"] = False
        if not v.ok:
            bad.append({"complex": _label(case), "op": op.label, "degree": op.degree,
                        "failed": sorted(c for c, x in v.checks.items() if not x)})
    return not bad and n >= 20, {"operators": n, "complexes": len(MACHINE_COMPLEXES), "failures": bad}


def criterion_5() -> Criterion:
    return _timed(5, "splitting operator contract", 60, _splitting)


def _q_operator():
    bad, n = [], 0
    for case, cx, op in _operators():
        n += 1
        v = bm.q_operator_checks(cx, op)
        if not v.ok:
            bad.append({"complex": _label(case), "op": op.label, "degree": op.degree,
                        "failed": sorted(c for c, x in v.checks.items() if not x)})
    return not bad, {"operators": n, "failures": bad}


def criterion_6() -> Criterion:
    return _timed(6, "Q operator, Neumann series and S = id - Q d*D", 60, _q_operator)


def _sequences():
    bad, dims = [], {}
    for case in MACHINE_COMPLEXES:
        cx = _complex(case)
        models = {"graded": {k: bm.graded_model(cx, k) for k in range(cx.top)}}
        models["conjugated"] = bm.conjugated_model(cx, 3)
        for name, ops in models.items():
            v = bm.sequence_checks(cx, ops)
            if not v.ok:
                bad.append({"complex": _label(case), "model": name,
                            "failed": sorted(c for c, x in v.checks.items() if not x)})
            dims[f"{_label(case)} {name}"] = [v.notes["cohomology"][str(k)]["compressed"] for k in range(cx.top + 1)]
    return not bad, {"cohomology": dims, "failures": bad}


def criterion_7() -> Criterion:
    return _timed(7, "compressed complexes and cohomology", 30, _sequences)


def _casimir():
    kappa = None
    bad, blocks = [], 0
    for case in BATTERY:
        cx = _complex(case)
        rep = hom.kostant_eigenvalue_check(cx, kappa)
        blocks += len(rep.rows)
        if kappa is None:
            kappa = rep.kappa
        if not rep.consistent:
            bad.append(_label(case))
    return not bad and kappa is not None, {
        "kappa": None if kappa is None else str(kappa), "blocks": blocks, "failures": bad,
    }


def criterion_8() -> Criterion:
    return _timed(8, "Laplacian eigenvalues from Casimir values", 30, _casimir)


def _path_geometry():
    issues = []
    rows = {
        (0, 0, 0): ([(0, 0, 0), (1, -2, 1), (2, -3, 0)], (1, 1)),
        (0, 1, 0): ([(1, 0, 1), (2, -2, 2), (4, -4, 0)], (1, 2)),
    }
    for (w, k, l), (ws, orders) in rows.items():
        seq = pg.path_sequence(pg.PathGeomCase(w, k, l))
        if [tuple(x.coords) for x in seq.weights] != ws or seq.orders != orders:
            issues.append(f"row {(w, k, l)}")
        for b, x in zip(seq.bundles, seq.weights):
            if b.weight() != x or pg.BundleName.from_weight(x) != b:
                issues.append(f"bundle dictionary at {(w, k, l)}")
    grid = pg.grid(range(-12, 5), range(5), range(5))
    counts = Counter(pg.classify_subsequence(c) for c in grid)
    if pg.partition_check() is not None:
        issues.append(pg.partition_check())
    walls = 0
    for c in grid:
        singular, _ = pg.singular_character(c)
        walls += singular
        if singular == pg.engine_singularity(c)["regular"]:
            issues.append(f"wall mismatch at {c.to_json()}")
    sub = pg.grid(range(-1, 2), range(3), range(3))
    engine_bad = [c.to_json() for c in sub if not pg.validate_against_engine(c).ok]
    issues.extend(f"engine mismatch {c}" for c in engine_bad)
    return not issues, {
        "grid": len(grid), "classes": dict(sorted(counts.items())), "singular": walls,
        "engine_cases": len(sub), "issues": issues,
    }


def criterion_9() -> Criterion:
    return _timed(9, "five-dimensional path geometry sequences", 120, _path_geometry)


def _insertion():
    pair = build_pair(3, (), (1, 2))
    cx = hom.build_complex(pair, adjoint_module(3, pair.levi_p_nodes))
    positions = [i for i, (a, _) in enumerate(pair.basis_rel) if a == 1]
    vecs = bm.forms_supported_on(cx, 2, positions)
    rep = bm.insertion_stability(cx, 2, vecs, cx, vecs)
    return rep.stable, {"dimension": len(vecs), **rep.to_json()}


def criterion_10() -> Criterion:
    return _timed(10, "insertion stability of L^2 p+ (x) g", 60, _insertion)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def render(results: List[Criterion], timings: bool = False) -> str:
    body = {
        "schema": "bgg/1",
        "command": "selftest",
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json(timings) for r in results],
    }
    return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False)


def run_core() -> List[Criterion]:
    return [c() for c in CRITERIA]


def criterion_11(first: Optional[List[Criterion]] = None) -> Criterion:
    def check():
        a = first if first is not None else run_core()
        hom.clear_cache()
        b = run_core()
        same = render(a) == render(b)
        return same, {"identical": same}
    return _timed(11, "determinism of the selftest report", 300, check)


def run_all() -> List[Criterion]:
    hom.clear_cache()
    core = run_core()
    return core + [criterion_11(core)]
