"""Command-line front end.

Exit status: 0 when the property holds or the command succeeded, 1 when a
checked property fails (the report carries a witness), 2 on usage errors,
bad input or exceeded caps.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import boolrep, catalog, classify as classify_mod, core, io, structure, tbrsc, topology
from .core import BRSCError, LIMITS, SimplicialComplex, face_key
from .report import analyze


class Outcome:
    def __init__(self, payload: dict[str, Any], code: int = 0, human: str | None = None):
        self.payload = payload
        self.code = code
        self.human = human


def _labels(S: SimplicialComplex, mask: int) -> list[str]:
    return S.universe.vertices(mask)


def _order_witness(S: SimplicialComplex, verdict) -> Any:
    if not verdict.holds:
        return {"face": _labels(S, verdict.witness)}
    return [
        {"facet": _labels(S, f), "order": [S.universe.labels[i] for i in w.transversal]}
        for f, w in sorted(verdict.witness.items(), key=lambda kv: face_key(kv[0]))
    ]


def _check(S: SimplicialComplex, prop: str) -> Outcome:
    witness: Any = None
    if prop == "br":
        v = boolrep.is_boolean_representable(S)
        holds, witness = v.holds, _order_witness(S, v)
    elif prop == "tbrsc":
        v = tbrsc.is_tbrsc(S)
        holds, witness = v.holds, _order_witness(S, v)
    elif prop == "matroid":
        bad = core.matroid_exchange_violation(S)
        holds = bad is None
        if bad:
            witness = {"I": _labels(S, bad[0]), "J": _labels(S, bad[1])}
    elif prop == "near-matroid":
        v = structure.is_near_matroid(S)
        holds = v.holds
        if not holds:
            witness = {"faces": [_labels(S, x) for x in v.witness]}
    elif prop == "paving":
        holds = S.is_paving()
    elif prop == "simple":
        holds = S.is_simple()
    elif prop == "pure":
        holds = S.is_pure()
    elif prop == "connected":
        holds = topology.is_connected(S)
        if not holds:
            witness = {"components": [_labels(S, c) for c in topology.components(S)]}
    else:  # pragma: no cover - argparse restricts choices
        raise BRSCError(f"unknown property {prop!r}")
    payload = {"property": prop, "holds": holds}
    if witness is not None:
        payload["witness"] = witness
    return Outcome(payload, 0 if holds else 1)


def _family(S: SimplicialComplex, fam) -> dict[str, Any]:
    return {"count": len(fam), "members": io.family_to_json(fam)}


def _emit_complex(S: SimplicialComplex, args) -> dict[str, Any]:
    if getattr(args, "output", None):
        io.save(S, args.output)
    return {"complex": io.complex_to_json(S)}


def cmd_check(args) -> Outcome:
    return _check(io.load_complex(args.file), args.property)


def cmd_analyze(args) -> Outcome:
    S = io.load_complex(args.file)
    return Outcome({"report": analyze(S).as_dict()})


def cmd_epsilon(args) -> Outcome:
    S = io.load_complex(args.file)
    return Outcome({"epsilon": _family(S, tbrsc.epsilon(S))})


def cmd_flats(args) -> Outcome:
    S = io.load_complex(args.file)
    return Outcome({"flats": _family(S, boolrep.flats(S))})


def cmd_closure(args) -> Outcome:
    S = io.load_complex(args.file)
    X = S.mask(args.set)
    op = tbrsc.epsilon_operator(S) if args.epsilon else boolrep.flat_operator(S)
    return Outcome({"set": _labels(S, X), "closure": _labels(S, op.closure(X))})


def cmd_truncate(args) -> Outcome:
    S = core.truncate(io.load_complex(args.file), args.k)
    return Outcome(_emit_complex(S, args))


def cmd_join(args) -> Outcome:
    A, B = io.load_complex(args.file), io.load_complex(args.other)
    if B.universe != A.universe:
        raise BRSCError("join needs both complexes on the same vertex list")
    return Outcome(_emit_complex(core.join(A, B), args))


def cmd_pure_core(args) -> Outcome:
    S = io.load_complex(args.file)
    k = args.truncate
    base = core.truncate(S, k) if k else S
    out = _emit_complex(core.pure_core(base), args)
    if args.certify:
        if not k:
            raise BRSCError("--certify needs --truncate k")
        if k <= 3:
            cert = structure.spch_pure_core(S, k)
            out["certificate"] = {
                "kind": "tbrsc-family" if cert.family is not None else "br",
                "family": io.family_to_json(cert.family) if cert.family is not None else None,
            }
        else:
            fam = structure.nm_pure_core_flats(S, k)
            out["certificate"] = {"kind": "near-matroid-flats", "family": io.family_to_json(fam)}
    return Outcome(out)


def cmd_decompose(args) -> Outcome:
    S = io.load_complex(args.file)
    if args.br:
        dec = tbrsc.br_decomposition(S)
        if dec is None:
            return Outcome({"decomposition": None, "reason": "not boolean representable"}, 1)
    else:
        dec = tbrsc.lines_of(S)
    if args.output:
        io.save(dec, args.output)
    return Outcome({"decomposition": io.decomposition_to_json(dec)})


def cmd_s0(args) -> Outcome:
    S = io.load_complex(args.file)
    return Outcome(_emit_complex(tbrsc.largest_paving_tbrsc(S), args))


def cmd_pi1(args) -> Outcome:
    S = io.load_complex(args.file)
    out: dict[str, Any] = {"pi1_rank": topology.pi1_rank(S)}
    if args.presentation:
        p = topology.edge_path_presentation(S)
        lab = S.universe.labels
        out["presentation"] = {
            "generators": [f"{lab[a]}-{lab[b]}" for a, b in p.generators],
            "relators": [[[g, e] for g, e in word] for word in p.relators],
            "abelian_rank": p.abelian_rank(),
        }
    return Outcome(out)


def cmd_homology(args) -> Outcome:
    S = io.load_complex(args.file)
    tor = topology.torsion(S)
    return Outcome({"betti": topology.betti(S), "torsion": [tor[k] for k in sorted(tor)]})


def cmd_flat_graph(args) -> Outcome:
    S = io.load_complex(args.file)
    g = topology.flat_graph(S)
    if args.dot:
        return Outcome({}, 0, human=g.to_dot())
    return Outcome({
        "edges": [_labels(S, e) for e in sorted(g.edges, key=face_key)],
        "components": [{"vertices": _labels(S, c), "trivial": t} for c, t in zip(g.components, g.trivial)],
    })


def cmd_gen(args) -> Outcome:
    name, params = args.name, [int(p) for p in args.params]
    if name in catalog.FIXTURES:
        if params:
            raise BRSCError(f"fixture {name!r} takes no parameters")
        S = catalog.example(name).complex
    elif name == "six":
        if len(params) != 1 or not 1 <= params[0] <= 5:
            raise BRSCError("six needs a case number 1..5")
        S = catalog.six_complexes()[params[0] - 1]
    elif name in catalog.GENERATORS:
        S = catalog.GENERATORS[name](*params)
    elif name == "bfour-matrix":
        M = catalog.bfour_matrix()
        if args.output:
            io.save(M, args.output)
        return Outcome({"matrix": io.matrix_to_json(M)})
    else:
        known = sorted(catalog.FIXTURES) + sorted(catalog.GENERATORS) + ["six", "bfour-matrix"]
        raise BRSCError(f"unknown generator {name!r}; known: {', '.join(known)}")
    return Outcome(_emit_complex(S, args))


def cmd_classify(args) -> Outcome:
    if not args.paving:
        raise BRSCError("only --paving classification is supported")
    u = core.VertexUniverse.of(args.vertices)
    res = classify_mod.classify(u, args.dim, args.filter, threads=args.threads)
    classes = []
    for c in res.classes:
        S = res.space.complex(c[0])
        classes.append({
            "size": len(c),
            "representative": io.complex_to_json(S),
            "missing": [S.fmt(t) if u.size else "" for t in res.space.tops if t not in S.faces],
        })
    return Outcome({
        "vertices": u.size, "dim": args.dim, "filter": args.filter,
        "candidates": res.space.size, "hits": len(res.hits), "classes": classes,
    })


def cmd_fixtures(args) -> Outcome:
    rows = []
    failed = False
    for name in catalog.fixture_names():
        fx = catalog.example(name)
        row: dict[str, Any] = {"name": name, "description": fx.description}
        if args.check:
            res = fx.check()
            row["checks"] = {k: {"expected": w, "actual": g, "ok": ok} for k, (w, g, ok) in res.items()}
            failed |= not all(ok for _, _, ok in res.values())
        rows.append(row)
    return Outcome({"fixtures": rows}, 1 if failed else 0)


COMMANDS = {
    "check": cmd_check, "analyze": cmd_analyze, "epsilon": cmd_epsilon, "flats": cmd_flats,
    "closure": cmd_closure, "truncate": cmd_truncate, "join": cmd_join, "pure-core": cmd_pure_core,
    "decompose": cmd_decompose, "s0": cmd_s0, "pi1": cmd_pi1, "homology": cmd_homology,
    "flat-graph": cmd_flat_graph, "gen": cmd_gen, "classify": cmd_classify, "fixtures": cmd_fixtures,
}


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults so values given before the verb survive
    common = argparse.ArgumentParser(add_help=False)
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common.add_argument("--human", action="store_true", default=dflt(False), help="plain-text output instead of JSON")
    common.add_argument("--max-vertices", type=int, metavar="N", default=dflt(None),
                        help=f"cap for exhaustive operations (default {LIMITS.exhaustive}; classify {LIMITS.classify})")
    common.add_argument("--threads", type=int, default=dflt(1), help="worker processes for classify (default 1)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="brsc", description="Boolean representable simplicial complexes and their truncations.",
                                parents=[_global_flags(suppress=False)])
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    c = add("check", "test a property; exit 1 with a witness when it fails")
    c.add_argument("property", choices=["br", "tbrsc", "matroid", "near-matroid", "paving", "simple", "pure", "connected"])
    c.add_argument("file")
    add("analyze", "full attribute report").add_argument("file")
    add("epsilon", "list the epsilon family").add_argument("file")
    add("flats", "list the lattice of flats").add_argument("file")
    c = add("closure", "closure of a vertex set")
    c.add_argument("file")
    c.add_argument("set", help='vertex labels, e.g. "13" or "a b"')
    c.add_argument("--epsilon", action="store_true", help="epsilon-closure instead of flat closure")
    c = add("truncate", "faces of size at most k")
    c.add_argument("file")
    c.add_argument("-k", type=int, required=True)
    c.add_argument("-o", "--output")
    c = add("join", "union of two complexes on one vertex list")
    c.add_argument("file")
    c.add_argument("other")
    c.add_argument("-o", "--output")
    c = add("pure-core", "largest pure subcomplex, optionally of a truncation")
    c.add_argument("file")
    c.add_argument("--truncate", type=int, metavar="K")
    c.add_argument("--certify", action="store_true", help="emit the Moore family certifying the result")
    c.add_argument("-o", "--output")
    c = add("decompose", "line decomposition of a paving TBRSC")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--lines", action="store_true", help="canonical epsilon lines (default)")
    g.add_argument("--br", action="store_true", help="lines from flats; exit 1 if not a BRSC")
    c.add_argument("-o", "--output")
    c = add("s0", "largest paving TBRSC inside a paving complex")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c = add("pi1", "rank of the free fundamental group of a TBRSC")
    c.add_argument("file")
    c.add_argument("--presentation", action="store_true")
    add("homology", "Betti numbers and torsion").add_argument("file")
    c = add("flat-graph", "graph of flats of the epsilon family")
    c.add_argument("file")
    c.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    c = add("gen", "write a named complex")
    c.add_argument("name")
    c.add_argument("params", nargs="*")
    c.add_argument("-o", "--output")
    c = add("classify", "exhaustive scan of labelled paving complexes, iso-reduced")
    c.add_argument("--paving", action="store_true", required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--vertices", type=int, required=True)
    c.add_argument("--filter", default="tbrsc & !br")
    c = add("fixtures", "list the built-in examples")
    c.add_argument("--check", action="store_true", help="verify every expected flag")
    return p


def _human(payload: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, dict) and v or isinstance(v, list) and v and not all(isinstance(x, str) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, dict):
                lines.append(_human(v, indent))
                lines.append("")
            else:
                lines.append(f"{pad}{_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(payload)}")
    return "\n".join(lines)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        if all(isinstance(x, str) for x in v):
            return "".join(v) if all(len(x) == 1 for x in v) else " ".join(v)
        return " ".join(_scalar(x) for x in v)
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse and execute one command; returns the exit code and the stdout text.

    Library errors become exit code 2 with the message on stderr; argparse
    usage errors exit through SystemExit(2) as usual.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_vertices is not None:
        if args.max_vertices < 1 or args.max_vertices > core.MAX_UNIVERSE:
            parser.error(f"--max-vertices must be between 1 and {core.MAX_UNIVERSE}")
        LIMITS.exhaustive = LIMITS.classify = args.max_vertices
    try:
        out = COMMANDS[args.verb](args)
    except BRSCError as e:
        print(f"brsc: error: {e}", file=sys.stderr)
        return 2, ""
    if out.human is not None:
        return out.code, out.human
    if args.human:
        return out.code, _human(out.payload) + "\n"
    return out.code, io.dumps({"format": io.FORMAT_VERSION, "command": args.verb, **out.payload})


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
