"""``numbers-game`` command line.

Nodes, colors, generator letters and firing steps are numbered from 1 here,
matching the usual mathematical notation; the Python API numbers from 0.
Output is one JSON document on stdout. Domain errors print a JSON error on
stderr and exit 1; bad flags exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify as classify_mod
from . import coxeter, engine, poset, spectral
from .catalog import family_table, format_id, sample_ids
from .errors import NumbersGameError
from .serialize import graph_to_json, load_graph, poset_from_json, position_to_json


class UsageError(Exception):
    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _plus1(nodes):
    return [v + 1 for v in nodes]


def _int_list(text, flag):
    text = text.strip()
    if not text:
        return []
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated integers, got {text!r}") from None
    if any(v < 1 for v in vals):
        raise UsageError(flag, "indices are numbered from 1")
    return [v - 1 for v in vals]


def _position(g, text, flag="--position"):
    if text is None or text == "ones":
        return g.ones()
    if text.startswith("omega:"):
        try:
            i = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(flag, f"bad fundamental position {text!r}") from None
        if not 1 <= i <= g.n:
            raise UsageError(flag, f"node {i} is outside 1..{g.n}")
        return g.fundamental(i - 1)
    try:
        vals = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(flag, "expected a JSON array, 'ones' or 'omega:<i>'") from None
    if not isinstance(vals, list):
        raise UsageError(flag, "expected a JSON array")
    if len(vals) != g.n:
        raise UsageError(flag, f"position has {len(vals)} entries, graph has {g.n} nodes")
    try:
        return g.position(vals)
    except (TypeError, ValueError) as exc:
        raise UsageError(flag, str(exc)) from None


def _scalar(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _certificate(cert):
    d = cert.to_dict()
    d["component"] = _plus1(cert.component)
    return d


def _graph(args):
    return load_graph(args.graph, args.mode, getattr(args, "symmetric", False))


# ---------------------------------------------------------------------------
# commands

def cmd_play(args):
    g = _graph(args)
    start = _position(g, args.position)
    policy = args.policy
    if policy != "lowest":
        if not policy.startswith("random:") or not policy[7:].lstrip("-").isdigit():
            raise UsageError("--policy", "use 'lowest' or 'random:<seed>'")
    if args.limit is not None and args.limit < 0:
        raise UsageError("--limit", "must be >= 0")
    out = engine.play(g, start, policy, args.limit, args.keep_positions, certify=not args.no_certify)
    res = {"status": out.status, "steps": out.steps}
    if out.status == engine.CONVERGED:
        res["terminal"] = position_to_json(out.position)
    elif out.status == engine.DIVERGENT:
        res["certificate"] = _certificate(out.certificate)
    else:
        res["limit"] = out.limit
        res["last"] = position_to_json(out.position)
    if not args.quiet:
        res["start"] = position_to_json(out.trace.start)
        res["fired"] = _plus1(out.trace.fired)
        if out.trace.positions is not None:
            res["positions"] = [position_to_json(p) for p in out.trace.positions]
    return res


def cmd_replay(args):
    g = _graph(args)
    start = _position(g, args.position)
    fired = _int_list(args.fired, "--fired")
    positions = engine.replay_positions(g, start, fired)
    res = {"position": position_to_json(positions[-1])}
    if args.keep_positions:
        res["positions"] = [position_to_json(p) for p in positions]
    return res


def _witness(w):
    if w is None:
        return None
    w = dict(w)
    w["nodes"] = _plus1(w["nodes"])
    if "edge" in w:
        w["edge"] = _plus1(w["edge"])
    return w


def cmd_classify(args):
    g = _graph(args)
    comps = []
    reports = dict(spectral.component_reports(g))
    for cls in classify_mod.classify_components(g):
        rep = reports[cls.nodes]
        entry = {
            "nodes": _plus1(cls.nodes),
            "verdict": cls.verdict,
            "id": cls.catalog_id,
            "trichotomy": rep.trichotomy,
            "rho": rep.rho,
            "nu": list(rep.nu),
        }
        if rep.nu_exact is not None:
            entry["nu_exact"] = [str(x) for x in rep.nu_exact]
        if cls.witness is not None:
            entry["witness"] = _witness(cls.witness)
        comps.append(entry)
    res = {"admissible": all(c["verdict"] != classify_mod.INADMISSIBLE for c in comps)}
    if not args.quiet:
        res["components"] = comps
    return res


def cmd_spectral(args):
    g = _graph(args)
    comps = []
    for nodes, rep in spectral.component_reports(g):
        entry = {"nodes": _plus1(nodes), **rep.to_dict()}
        comps.append(entry)
    return {"components": comps}


def cmd_orbit(args):
    g = _graph(args)
    seed = _position(g, args.position)
    if args.cap < 1:
        raise UsageError("--cap", "must be >= 1")
    if args.threads < 1:
        raise UsageError("--threads", "must be >= 1")
    out = coxeter.orbit(g, seed, args.cap, args.keep_positions, args.threads)
    res = out.to_dict()
    if args.keep_positions and out.positions is not None:
        res["positions"] = [position_to_json(p) for p in out.positions]
    return res


def cmd_reduce(args):
    g = _graph(args)
    word = _int_list(args.word, "--word")
    if any(i >= g.n for i in word):
        raise UsageError("--word", f"letters must lie in 1..{g.n}")
    return {"reduced": coxeter.is_reduced(g, word)}


def cmd_check_poset(args):
    g = _graph(args)
    try:
        with open(args.poset) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("--poset", str(exc)) from None
    p = poset_from_json(raw)
    report = poset.check_m_structure(p, g)
    res = report.to_dict()
    res["colors_used"] = _plus1(report.colors_used)
    for v in res["violations"]:
        v["edge"] += 1
        v["cover"][2] += 1
    for entry in res["sufficiently_surjective"]:
        entry["nodes"] = _plus1(entry["nodes"])
    for entry in res["ranked_component_failures"]:
        entry["color"] += 1
    res["weights"] = {str(x): list(poset.weight(p, x)) for x in p.elements} if report.ok else None
    if args.infer:
        inf = poset.infer_finite_type(p, g)
        d = inf.to_dict()
        d["fired"] = _plus1(inf.fired)
        d["weights"] = [[_scalar(v) for v in w] for w in inf.weights]
        for c in d["classifications"]:
            c["nodes"] = _plus1(c["nodes"])
        res["inference"] = d
    return res


def cmd_catalog_list(args):
    if args.graph:
        g = _graph(args)
        return graph_to_json(g)
    return {
        "families": family_table(),
        "examples": [format_id(cid) for cid in sample_ids(args.max_rank)],
    }


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numbers-game", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_flags(p, required=True):
        p.add_argument("--graph", required=required, help="JSON graph file or catalog id")
        p.add_argument("--mode", choices=("exact", "approx"), help="arithmetic mode")
        p.add_argument("--symmetric", action="store_true",
                       help="use the symmetric E-GCM form of a catalog graph")

    p = sub.add_parser("play", help="play a game")
    graph_flags(p)
    p.add_argument("--position", default="ones")
    p.add_argument("--policy", default="lowest")
    p.add_argument("--limit", type=int)
    p.add_argument("--keep-positions", action="store_true")
    p.add_argument("--no-certify", action="store_true", help="skip the divergence certificate")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("replay", help="replay an explicit firing sequence")
    graph_flags(p)
    p.add_argument("--position", default="ones")
    p.add_argument("--fired", required=True, help="comma-separated nodes, e.g. 1,2,1")
    p.add_argument("--keep-positions", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("classify", help="admissibility and type of each component")
    graph_flags(p)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectral", help="Perron root and vector of each component")
    graph_flags(p)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("orbit", help="enumerate the orbit of a strongly dominant position")
    graph_flags(p)
    p.add_argument("--position", default="ones")
    p.add_argument("--cap", type=int, default=coxeter.DEFAULT_CAP)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--keep-positions", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("reduce", help="is a word reduced")
    graph_flags(p)
    p.add_argument("--word", required=True, help="comma-separated letters, leftmost first")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-poset", help="check the M-structure property")
    graph_flags(p)
    p.add_argument("--poset", required=True)
    p.add_argument("--infer", action="store_true", help="also run the finite-type inference")
    p.set_defaults(func=cmd_check_poset)

    p = sub.add_parser("catalog-list", help="list catalog families, or print one graph")
    graph_flags(p, required=False)
    p.add_argument("--max-rank", type=int, default=4)
    p.set_defaults(func=cmd_catalog_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except NumbersGameError as exc:
        print(json.dumps(exc.to_dict(base=1)), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": "value_error", "message": str(exc)}), file=sys.stderr)
        return 1
    print(json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
