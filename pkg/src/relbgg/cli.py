"""Command-line front end: ``bgg <command> [algebra] [options]``.

Reports are JSON documents tagged ``"schema": "bgg/1"`` with every rational
written as a ``"num/den"`` string.  ``--plain`` switches to an indented text
rendering in which weights appear in Dynkin-diagram notation.

Exit codes: 0 success, 1 selftest failure, 2 parse or usage error,
3 representability error, 4 internal consistency or calibration error.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from . import acceptance
from . import bggmachine as bm
from . import homology as hom
from . import pathgeom as pg
from .parabolic import ParabolicPair, build_pair, pair_string, parse_pair_string
from .qmatrix import fmt_rational
from .repn import DimensionError, RepresentabilityError, adjoint_module
from .rootdata import (
    Weight,
    affine_action,
    build_root_system,
    character_is_regular,
    hasse_words,
    singular_roots,
)

SCHEMA = "bgg/1"

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_REPR, EXIT_INTERNAL = 0, 1, 2, 3, 4

PAIR_COMMANDS = {
    "hasse", "orbit", "homology", "spectrum", "kostant-check", "kunneth",
    "splitting", "qop", "compressed", "insertion",
}
COMMANDS = ["rootsys"] + sorted(PAIR_COMMANDS) + ["pathgeom", "selftest"]

# command-specific options and their defaults, in rendering order
OPTIONS: Dict[str, Dict[str, Optional[str]]] = {
    "spectrum": {"degree": None},
    "splitting": {"degree": "0", "seed": None},
    "qop": {"degree": "0", "seed": None, "method": "both"},
    "compressed": {"degree": "0", "seed": None, "model": "random"},
    "insertion": {"node": "1", "degree": "2"},
    "pathgeom": {"w": "0", "k": "0", "l": "0", "validate": None},
    "selftest": {"timings": None, "mutate": None},
}
FLAGS = {"validate", "timings"}


class CliError(Exception):
    def __init__(self, code: int, message: str, detail=None):
        super().__init__(message)
        self.code = code
        self.detail = detail


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_PARSE, message)


def _nodes(text: Optional[str]) -> Tuple[int, ...]:
    if text is None or text.strip() in ("", "-"):
        return ()
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad node list {text!r}") from None


def _rationals(text: str) -> Tuple[Q, ...]:
    try:
        return tuple(Q(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_PARSE, f"bad rational list {text!r}") from None


@dataclass(frozen=True)
class JobSpec:
    command: str
    rank: Optional[int] = None
    crossed_p: Tuple[int, ...] = ()
    crossed_q: Tuple[int, ...] = ()
    hw: Optional[Tuple[Q, ...]] = None
    options: Tuple[Tuple[str, str], ...] = ()
    output: Optional[str] = None
    plain: bool = False

    def option(self, name: str) -> Optional[str]:
        return dict(self.options).get(name, OPTIONS.get(self.command, {}).get(name))

    def flag(self, name: str) -> bool:
        return dict(self.options).get(name) == "yes"

    def render(self) -> str:
        parts = [self.command]
        if self.rank is not None:
            parts.append(f"A{self.rank}")
        if self.command in PAIR_COMMANDS:
            parts += ["--p", ",".join(map(str, self.crossed_p)) or "-"]
            parts += ["--q", ",".join(map(str, self.crossed_q)) or "-"]
        if self.hw is not None:
            parts += ["--hw", ",".join(fmt_short(c) for c in self.hw)]
        given = dict(self.options)
        for name in OPTIONS.get(self.command, {}):
            if name in given:
                if name in FLAGS:
                    parts.append(f"--{name}")
                elif name == "mutate":
                    for m in given[name].split(","):
                        parts += ["--mutate", m]
                else:
                    parts += [f"--{name}", given[name]]
        if self.plain:
            parts.append("--plain")
        if self.output:
            parts += ["--output", self.output]
        return " ".join(shlex.quote(p) for p in parts)

    @classmethod
    def parse(cls, argv) -> "JobSpec":
        if isinstance(argv, str):
            argv = shlex.split(argv)
        ns = build_parser().parse_args(_glue_negative(list(argv)))
        rank = None
        cp: Tuple[int, ...] = ()
        cq: Tuple[int, ...] = ()
        if ns.algebra:
            if " " in ns.algebra.strip():
                try:
                    pair = parse_pair_string(ns.algebra)
                except ValueError as exc:
                    raise CliError(EXIT_PARSE, str(exc)) from None
                rank, cp, cq = pair.rank, tuple(sorted(pair.crossed_p)), tuple(sorted(pair.crossed_q))
            else:
                a = ns.algebra.strip()
                if not a[:1].upper() == "A" or not a[1:].isdigit():
                    raise CliError(EXIT_PARSE, f"bad algebra {ns.algebra!r}; expected A<rank>")
                rank = int(a[1:])
        if getattr(ns, "p", None) is not None:
            cp = _nodes(ns.p)
        if getattr(ns, "q", None) is not None:
            cq = _nodes(ns.q)
        hw = _rationals(ns.hw) if getattr(ns, "hw", None) else None
        if ns.command in PAIR_COMMANDS or ns.command == "rootsys":
            if rank is None:
                raise CliError(EXIT_PARSE, f"{ns.command} needs an algebra such as A3")
        if hw is not None and rank is not None and len(hw) != rank:
            raise CliError(EXIT_PARSE, f"--hw has {len(hw)} entries, A{rank} needs {rank}")
        opts = []
        for name in OPTIONS.get(ns.command, {}):
            val = getattr(ns, name, None)
            if name in FLAGS:
                if val:
                    opts.append((name, "yes"))
            elif name == "mutate":
                if val:
                    opts.append((name, ",".join(sorted(set(val)))))
            elif val is not None:
                opts.append((name, str(val)))
        return cls(ns.command, rank, cp, cq, hw, tuple(opts), ns.output, ns.plain)


_NEGATIVE = re.compile(r"-\d")


def _glue_negative(argv: List[str]) -> List[str]:
    """Attach values such as ``-1,0,0`` to their option so argparse keeps them."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def fmt_short(c: Q) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bgg", description="Relative BGG machinery for sl(n+1).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name != "pathgeom" and name != "selftest":
            sp.add_argument("algebra", nargs="?", help="A<rank>, or a full pair such as 'A3 p=1 q=1,2'")
        else:
            sp.set_defaults(algebra=None)
        if name in PAIR_COMMANDS:
            sp.add_argument("--p", help="crossed nodes of the larger parabolic p (comma list, '-' for none)")
            sp.add_argument("--q", help="crossed nodes of q")
        if name in PAIR_COMMANDS - {"hasse", "insertion"}:
            sp.add_argument("--hw", help="highest weight as a comma list of rationals")
        sp.add_argument("--plain", action="store_true", help="plain-text output")
        sp.add_argument("--output", help="write the report to this file")
        for opt in OPTIONS.get(name, {}):
            if opt in FLAGS:
                sp.add_argument(f"--{opt}", action="store_true")
            elif opt == "mutate":
                sp.add_argument("--mutate", action="append", choices=sorted(hom.KNOWN_MUTATIONS))
            elif opt == "method":
                sp.add_argument("--method", choices=["eigen", "neumann", "both"])
            elif opt == "model":
                sp.add_argument("--model", choices=["random", "graded", "conjugated"])
            else:
                sp.add_argument(f"--{opt}")
    return parser


# ---------------------------------------------------------------------------


@dataclass
class Fmt:
    plain: bool
    crossed: Tuple[int, ...] = ()

    def w(self, lam: Weight):
        return lam.dynkin(self.crossed) if self.plain else lam.to_json()

    def counter(self, c: Counter) -> list:
        return [{"weight": self.w(w), "multiplicity": m} for w, m in sorted(c.items(), key=lambda t: t[0].coords)]


def _int(spec: JobSpec, name: str) -> Optional[int]:
    v = spec.option(name)
    if v is None or v == "none":
        return None
    try:
        return int(v)
    except ValueError:
        raise CliError(EXIT_PARSE, f"--{name} expects an integer, got {v!r}") from None


def _pair(spec: JobSpec) -> ParabolicPair:
    return build_pair(spec.rank, spec.crossed_p, spec.crossed_q)


def _hw(spec: JobSpec) -> Weight:
    return Weight(spec.hw if spec.hw is not None else [0] * spec.rank)


def _complex(spec: JobSpec) -> hom.ChainComplex:
    return hom.complex_for(_pair(spec), _hw(spec))


def _head(spec: JobSpec) -> dict:
    out = {"schema": SCHEMA, "command": spec.command}
    if spec.command in PAIR_COMMANDS:
        out["pair"] = pair_string(_pair(spec))
    elif spec.rank is not None:
        out["algebra"] = f"A{spec.rank}"
    if spec.hw is not None or spec.command in PAIR_COMMANDS - {"hasse", "insertion"}:
        lam = _hw(spec)
        out["hw"] = lam.dynkin(spec.crossed_q) if spec.plain else lam.to_json()
    return out


def cmd_rootsys(spec: JobSpec, f: Fmt) -> dict:
    rs = build_root_system(spec.rank)
    return {
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "simple_roots": [f.w(a) for a in rs.simple_roots],
        "positive_roots": [{"pair": list(p), "root": f.w(a)} for p, a in zip(rs.positive_pairs, rs.positive_roots)],
        "rho": f.w(rs.rho),
        "weyl_order": rs.weyl_order,
    }


def cmd_hasse(spec: JobSpec, f: Fmt) -> dict:
    pair = _pair(spec)
    levels = hasse_words(pair.rank, pair.levi_p_nodes, pair.levi_q_nodes)
    return {
        "sizes": [len(l) for l in levels],
        "levels": [[str(w) for w in level] for level in levels],
    }


def cmd_orbit(spec: JobSpec, f: Fmt) -> dict:
    pair = _pair(spec)
    rs = build_root_system(pair.rank)
    lam = _hw(spec)
    levels = hasse_words(pair.rank, pair.levi_p_nodes, pair.levi_q_nodes)
    return {
        "regular": character_is_regular(rs, lam),
        "singular_roots": [list(p) for p in singular_roots(rs, lam)],
        "levels": [[{"word": str(w), "weight": f.w(affine_action(rs, w, lam))} for w in level] for level in levels],
    }


def cmd_homology(spec: JobSpec, f: Fmt) -> dict:
    cx = _complex(spec)
    h = hom.homology(cx)
    return {
        "chain_dims": [cx.dim(k) for k in range(cx.top + 1)],
        "dims": h.dims(),
        "degrees": [
            [{"weight": f.w(s.weight), "multiplicity": s.multiplicity, "dim": s.dim} for s in summ]
            for summ in h.degrees
        ],
    }


def cmd_spectrum(spec: JobSpec, f: Fmt) -> dict:
    cx = _complex(spec)
    k = _int(spec, "degree")
    degrees = range(cx.top + 1) if k is None else [k]
    if k is not None and not 0 <= k <= cx.top:
        raise CliError(EXIT_PARSE, f"degree {k} is outside 0..{cx.top}")
    out = {}
    for d in degrees:
        out[str(d)] = [
            {"weight": f.w(b.weight), "ell": fmt_rational(b.ell), "dim": b.dim,
             "eigenvalue": fmt_rational(b.eigenvalue), "in_image": b.in_image}
            for b in hom.scalar_blocks(cx, d)
        ]
    return {"blocks": out}


def cmd_kostant_check(spec: JobSpec, f: Fmt) -> dict:
    pair = _pair(spec)
    cx = _complex(spec)
    h = hom.homology(cx)
    predicted = hom.kostant_predict(pair, _hw(spec))
    got = [h.weights(k) for k in range(cx.top + 1)]
    rep = hom.kostant_eigenvalue_check(cx)
    body = {
        "homology_matches": got == predicted,
        "predicted": [f.counter(c) for c in predicted],
        "computed": [f.counter(c) for c in got],
        "kappa": None if rep.kappa is None else fmt_rational(rep.kappa),
        "eigenvalues_consistent": rep.consistent,
        "blocks": [
            {"degree": k, "weight": f.w(mu), "eigenvalue": fmt_rational(a), "casimir_difference": fmt_rational(c)}
            for k, mu, a, c in rep.rows
        ],
    }
    if got != predicted:
        raise CliError(EXIT_INTERNAL, "computed homology differs from the Hasse diagram prediction", body)
    if not rep.consistent:
        raise hom.CalibrationError("Laplacian eigenvalues are not a single multiple of Casimir differences")
    return body


def cmd_kunneth(spec: JobSpec, f: Fmt) -> dict:
    r = hom.kunneth_compare(spec.rank, spec.crossed_p, spec.crossed_q, _hw(spec))
    body = {
        "equal": r["equal"],
        "left": [f.counter(c) for c in r["left"]],
        "right": [f.counter(c) for c in r["right"]],
    }
    if not r["equal"]:
        raise CliError(EXIT_INTERNAL, "the two sides of the Kunneth comparison differ", body)
    return body


def _operator(spec: JobSpec, cx) -> bm.FilteredOperator:
    k = _int(spec, "degree")
    if not 0 <= k < cx.top:
        raise CliError(EXIT_PARSE, f"degree {k} has no outgoing differential (top degree {cx.top})")
    return bm.make_compressable(cx, k, _int(spec, "seed"))


def cmd_splitting(spec: JobSpec, f: Fmt) -> dict:
    cx = _complex(spec)
    op = _operator(spec, cx)
    poly = bm.splitting_operator(cx, op)
    v = bm.splitting_checks(cx, op)
    v.checks["recorded polynomial reproduces S"] = poly.evaluate(bm.p_operator(cx, op)) == poly.matrix
    return {"operator": op.label, "degree": op.degree, "polynomial": poly.to_json(), "verdicts": v.to_json()}


def cmd_qop(spec: JobSpec, f: Fmt) -> dict:
    cx = _complex(spec)
    op = _operator(spec, cx)
    method = spec.option("method")
    out = {"operator": op.label, "degree": op.degree}
    if method in ("eigen", "both"):
        out["eigen"] = bm.q_operator(cx, op, "eigen").to_json()
    if method in ("neumann", "both"):
        out["neumann"] = bm.q_operator(cx, op, "neumann").to_json()
    out["verdicts"] = bm.q_operator_checks(cx, op).to_json()
    return out


def cmd_compressed(spec: JobSpec, f: Fmt) -> dict:
    cx = _complex(spec)
    model = spec.option("model")
    k = _int(spec, "degree")
    if not 0 <= k < cx.top:
        raise CliError(EXIT_PARSE, f"degree {k} has no outgoing differential (top degree {cx.top})")
    out = {"model": model, "degree": k}
    if model == "random":
        ops = {k: bm.make_compressable(cx, k, _int(spec, "seed"))}
    elif model == "graded":
        ops = {j: bm.graded_model(cx, j) for j in range(cx.top)}
    else:
        ops = bm.conjugated_model(cx, _int(spec, "seed") or 0)
    op = ops[k]
    out["operator"] = op.label
    out["matrix"] = bm.compressed_operator(cx, op).to_json()
    out["verdicts"] = bm.compressed_checks(cx, op).to_json()
    if model != "random":
        out["sequence"] = bm.sequence_checks(cx, ops).to_json()
    return out


def cmd_insertion(spec: JobSpec, f: Fmt) -> dict:
    pair = _pair(spec)
    node = _int(spec, "node")
    k = _int(spec, "degree")
    if node not in pair.crossed_q or node in pair.crossed_p:
        raise CliError(EXIT_PARSE, f"node {node} must be crossed for q and not for p")
    cx = hom.build_complex(pair, adjoint_module(pair.rank, pair.levi_p_nodes))
    if not 0 <= k < cx.top:
        raise CliError(EXIT_PARSE, f"degree {k} is outside 0..{cx.top - 1}")
    positions = [i for i, (a, b) in enumerate(pair.basis_rel) if a <= node < b]
    e_vecs = bm.forms_supported_on(cx, k, positions)
    f_vecs = bm.forms_supported_on(cx, 2, positions)
    rep = bm.insertion_stability(cx, k, e_vecs, cx, f_vecs)
    return {"node": node, "degree": k, "dim_E": len(e_vecs), "dim_F": len(f_vecs), **rep.to_json()}


def cmd_pathgeom(spec: JobSpec, f: Fmt) -> dict:
    try:
        w = Q(spec.option("w"))
        k, l = int(spec.option("k")), int(spec.option("l"))
        case = pg.PathGeomCase(w, k, l)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_PARSE, f"bad path geometry parameters: {exc}") from None
    rep = pg.report(case, validate=spec.flag("validate"))
    if f.plain:
        seq = pg.path_sequence(case)
        rep["weights"] = [x.dynkin(pg.CROSSED_Q) for x in seq.weights]
        rep.pop("dynkin", None)
    if spec.flag("validate") and not rep["engine"]["ok"]:
        raise CliError(EXIT_INTERNAL, "engine homology differs from the closed formulas", rep)
    return rep


def cmd_selftest(spec: JobSpec, f: Fmt) -> dict:
    muts = [m for m in (spec.option("mutate") or "").split(",") if m]
    saved = set(hom.MUTATIONS)
    hom.MUTATIONS.clear()
    hom.MUTATIONS.update(muts)
    try:
        results = acceptance.run_all()
    finally:
        hom.MUTATIONS.clear()
        hom.MUTATIONS.update(saved)
        hom.clear_cache()
    timings = spec.flag("timings")
    body = {
        "mutations": sorted(muts),
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json(timings) for r in results],
        "summary": [r.line(timings) for r in results],
    }
    return body


HANDLERS = {
    "rootsys": cmd_rootsys, "hasse": cmd_hasse, "orbit": cmd_orbit, "homology": cmd_homology,
    "spectrum": cmd_spectrum, "kostant-check": cmd_kostant_check, "kunneth": cmd_kunneth,
    "splitting": cmd_splitting, "qop": cmd_qop, "compressed": cmd_compressed,
    "insertion": cmd_insertion, "pathgeom": cmd_pathgeom, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------


def render_plain(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.extend(render_plain(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_plain(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat(val) -> bool:
    if isinstance(val, list):
        return all(not isinstance(x, (dict, list)) and not (isinstance(x, str) and " " in x) for x in val)
    return False


def _scalar(val) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(x) for x in val) + "]"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if val is None:
        return "-"
    if isinstance(val, dict) and not val:
        return "{}"
    return str(val)


def dumps(obj, plain: bool) -> str:
    if plain:
        return "\n".join(render_plain(obj)) + "\n"
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run(spec: JobSpec) -> Tuple[int, str]:
    f = Fmt(spec.plain, spec.crossed_q)
    try:
        body = _head(spec)
        body.update(HANDLERS[spec.command](spec, f))
        code = EXIT_OK
        if spec.command == "selftest" and not body["passed"]:
            code = EXIT_FAILED
        return code, dumps(body, spec.plain)
    except CliError as exc:
        return exc.code, dumps(_error(spec, exc.code, "usage" if exc.code == EXIT_PARSE else "check", str(exc), exc.detail), spec.plain)
    except (RepresentabilityError, DimensionError, hom.NotRelativeError) as exc:
        return EXIT_REPR, dumps(_error(spec, EXIT_REPR, type(exc).__name__, str(exc)), spec.plain)
    except ValueError as exc:
        return EXIT_PARSE, dumps(_error(spec, EXIT_PARSE, type(exc).__name__, str(exc)), spec.plain)
    except Exception as exc:  # every other failure is an internal inconsistency
        return EXIT_INTERNAL, dumps(_error(spec, EXIT_INTERNAL, type(exc).__name__, str(exc)), spec.plain)


def _error(spec: Optional[JobSpec], code: int, kind: str, message: str, detail=None) -> dict:
    err = {"exit": code, "type": kind, "message": message}
    if detail is not None:
        err["detail"] = detail
    out = {"schema": SCHEMA, "error": err}
    if spec is not None:
        out["command"] = spec.command
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        spec = JobSpec.parse(argv or ["--help"])
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except CliError as exc:
        sys.stdout.write(dumps(_error(None, exc.code, "usage", str(exc)), False))
        return exc.code
    code, text = run(spec)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
