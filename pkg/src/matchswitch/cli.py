"""Command-line experiment harness.

One binary with subcommands (enumerate, switchgraph, path, chain, construct,
bridge, scan). Options can come from flags or from a JSON config file via
--config; explicit flags win. Every emitted document embeds the tool version
and a hash of the fully resolved configuration, and runs are deterministic
per seed.

Exit codes: 0 ok, 2 config error, 3 enumeration/state-space budget exceeded,
4 asserted property violated.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import re
import sys
from pathlib import Path

from . import __version__
from .chain import congestion, exact_diagnostics, simulate
from .digraphs import (Digraph, bip_to_digraph, digraph_to_bip,
                       gen_Hp, gen_isolated_general, has_directed_cycle_at_most,
                       matching_to_digraph)
from .errors import ConfigError, EnumerationBudgetExceeded, MatchSwitchError, OmegaTooLarge
from .graphs import (Graph, as_fraction, complete_bipartite, complete_graph,
                     cycle_graph, degree_report, gen_cycle_union, gen_F,
                     gen_F_bip, gen_G_family, gen_G_family_bip,
                     gen_random_min_degree)
from .matchings import Matching, iter_matchings
from .reconfig import k_switch_path, validate_path
from .switchgraph import (build_switch_graph, components, evaluate_thresholds,
                          matching_size_for_gamma, scan_threshold)

_GRAPH_RE = re.compile(r"^K(\d+),(\d+)$|^K(\d+)$|^C(\d+)$")


def parse_graph_spec(spec: str) -> Graph:
    """K<n>, K<a>,<b>, C<m>, or a path to a graph JSON file."""
    m = _GRAPH_RE.match(spec)
    if m:
        if m.group(1):
            return complete_bipartite(int(m.group(1)), int(m.group(2)))
        if m.group(3):
            return complete_graph(int(m.group(3)))
        return cycle_graph(int(m.group(4)))
    p = Path(spec)
    if p.exists():
        return Graph.from_json(json.loads(p.read_text()))
    raise ConfigError(f"cannot parse graph spec {spec!r}")


def _family_graph(args) -> Graph:
    name = args.family
    gamma = as_fraction(args.gamma)
    if name == "G":
        return gen_G_family(args.k, args.p, gamma, args.n)
    if name == "G_bip":
        return gen_G_family_bip(args.k, args.p, gamma, args.n)
    if name == "F":
        return gen_F(args.k, args.n)
    if name == "F_bip":
        return gen_F_bip(args.k, args.n)
    if name == "cycle_union":
        return gen_cycle_union(args.k, args.c_count)
    if name == "random":
        return gen_random_min_degree(args.n, args.delta,
                                     bipartite=args.bipartite, seed=args.seed)
    raise ConfigError(f"unknown family {name!r}")


def _resolve_graph(args) -> Graph:
    if getattr(args, "graph", None):
        return parse_graph_spec(args.graph)
    if getattr(args, "family", None):
        return _family_graph(args)
    raise ConfigError("provide --graph or --family")


def _config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


_IO_KEYS = ("func", "config", "output", "witness_dir", "trajectory")


def _meta(args) -> dict:
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in _IO_KEYS and v is not None}
    return {"tool_version": __version__, "config_hash": _config_hash(config),
            "config": config}


def _emit_json(args, payload: dict) -> None:
    doc = dict(_meta(args))
    doc.update(payload)
    text = json.dumps(doc, indent=2, default=str)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    G = _resolve_graph(args)
    if args.size is not None:
        size = args.size
    else:
        size = matching_size_for_gamma(G, as_fraction(args.gamma))
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        print(json.dumps(_meta(args)), file=out)
        count = 0
        for M in iter_matchings(G, size, budget=args.budget):
            print(json.dumps(M.to_json()), file=out)
            count += 1
        print(json.dumps({"count": count}), file=out)
    finally:
        if args.output:
            out.close()
    return 0


def cmd_switchgraph(args) -> int:
    G = _resolve_graph(args)
    rep = evaluate_thresholds(G, args.k, as_fraction(args.gamma), c=args.c,
                              budget=args.budget)
    payload = {"graph": G.to_json(), "min_degree": degree_report(G).min_degree,
               "report": rep.to_json()}
    _emit_json(args, payload)
    if args.assert_prop:
        if not rep.properties.get(args.assert_prop, False):
            print(f"property {args.assert_prop} violated", file=sys.stderr)
            return 4
    return 0


def cmd_path(args) -> int:
    G = _resolve_graph(args)
    gamma = as_fraction(args.gamma)
    size = matching_size_for_gamma(G, gamma)
    if args.all_pairs:
        ms = list(iter_matchings(G, size, budget=args.budget))
        total = valid = 0
        max_len = 0
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                total += 1
                path = k_switch_path(G, ms[i], ms[j], args.k, gamma=gamma)
                ok, reason = validate_path(G, path, args.k)
                if ok:
                    valid += 1
                else:
                    print(f"pair ({i},{j}) invalid: {reason}", file=sys.stderr)
                max_len = max(max_len, len(path))
        _emit_json(args, {"pairs": total, "validated": valid,
                          "max_length": max_len, "k": args.k})
        return 0 if valid == total else 4
    if not (args.source and args.target):
        raise ConfigError("provide --all-pairs or both --source and --target")
    M1 = Matching(G, [tuple(e) for e in json.loads(args.source)])
    M2 = Matching(G, [tuple(e) for e in json.loads(args.target)])
    path = k_switch_path(G, M1, M2, args.k, gamma=gamma)
    ok, reason = validate_path(G, path, args.k)
    _emit_json(args, {"path": path.to_json(), "valid": ok, "reason": reason})
    return 0 if ok else 4


def cmd_chain(args) -> int:
    G = _resolve_graph(args)
    payload: dict = {"chain": args.chain}
    if args.exact:
        diag = exact_diagnostics(G, args.chain, omega_cap=args.omega_cap)
        payload["diagnostics"] = diag.to_json()
        if args.congestion:
            if args.chain != "gamma4":
                raise ConfigError("--congestion applies to the gamma4 chain")
            rho, bound, _ = congestion(G)
            payload["congestion"] = {"rho": float(rho), "bound": bound}
    if args.steps:
        summary = simulate(G, args.chain, args.steps, args.seed)
        payload["simulation"] = summary.to_json()
        if args.trajectory:
            # replay the same substream, indexing states against canonical Omega
            from .chain import _chain_move, _chain_order, _sample_side
            from .rng import substream
            omega = list(iter_matchings(G, G.n // 2, budget=args.omega_cap))
            index = {m.edge_mask: i for i, m in enumerate(omega)}
            rng = substream(args.seed, "chain")
            p = omega[0].partners()
            side = _sample_side(G)
            j = _chain_order(args.chain)
            with open(args.trajectory, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["step", "matching_index"])
                for t in range(args.steps + 1):
                    mask = 0
                    for v, w2 in enumerate(p):
                        if 0 <= v < w2:
                            mask |= 1 << G.edge_index[(v, w2)]
                    w.writerow([t, index[mask]])
                    if t < args.steps:
                        _chain_move(G, p, side, j, rng)
    _emit_json(args, payload)
    return 0


def cmd_construct(args) -> int:
    if args.family == "Hp":
        D = gen_Hp(args.p)
        _emit_json(args, {"digraph": D.to_json(),
                          "min_semidegree": D.min_semidegree()})
        return 0
    if args.family == "isolated_general":
        G, M = gen_isolated_general(args.n)
        _emit_json(args, {"graph": G.to_json(), "matching": M.to_json(),
                          "min_degree": degree_report(G).min_degree})
        return 0
    G = _family_graph(args)
    _emit_json(args, {"graph": G.to_json(),
                      "min_degree": degree_report(G).min_degree})
    return 0


def cmd_bridge(args) -> int:
    if args.mode == "to-digraph":
        G = _resolve_graph(args)
        if args.matching:
            M = Matching(G, [tuple(e) for e in json.loads(args.matching)])
        else:
            M = next(iter_matchings(G, G.n // 2), None)
            if M is None:
                raise ConfigError("graph has no perfect matching")
        D = matching_to_digraph(G, M)
        found, witness = has_directed_cycle_at_most(D, args.k)
        _emit_json(args, {"digraph": D.to_json(), "oriented": D.oriented,
                          "min_outdegree": D.min_outdegree(),
                          "has_cycle_at_most_k": found, "witness": witness})
    elif args.mode == "to-bip":
        D = Digraph.from_json(json.loads(Path(args.digraph).read_text()))
        G, M = digraph_to_bip(D)
        back = bip_to_digraph(G, M)
        _emit_json(args, {"graph": G.to_json(), "matching": M.to_json(),
                          "roundtrip_ok": back == D})
    else:
        raise ConfigError(f"unknown bridge mode {args.mode!r}")
    return 0


def cmd_scan(args) -> int:
    rows = scan_threshold(args.n, args.k, as_fraction(args.gamma), args.property,
                          mode=args.mode, seed=args.seed, trials=args.trials,
                          c=args.c, bipartite=args.bipartite, budget=args.budget,
                          workers=args.workers)
    outdir = Path(args.witness_dir) if args.witness_dir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        print(f"# {json.dumps(_meta(args), default=str)}", file=out)
        w = csv.writer(out)
        w.writerow(["n", "k", "gamma", "delta", "property",
                    "witness_found", "witness_file"])
        for row in rows:
            wfile = ""
            if row["witness"] is not None and outdir:
                wfile = str(outdir / f"witness_{args.property}_d{row['delta']}.json")
                Path(wfile).write_text(json.dumps(row["witness"].to_json()))
            w.writerow([row["n"], row["k"], row["gamma"], row["delta"],
                        row["property"], row["witness_found"], wfile])
    finally:
        if args.output:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_common(p, gamma_default="1"):
    p.add_argument("--graph", help="K<n>, K<a>,<b>, C<m>, or graph JSON path")
    p.add_argument("--family", help="G | G_bip | F | F_bip | cycle_union | random")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--c-count", type=int, default=1, help="cycle count for cycle_union")
    p.add_argument("--delta", type=int, default=0, help="min degree for random family")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--gamma", default=gamma_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("--output", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matchswitch",
        description="Reconfiguration-space workbench for matchings under k-switches")
    ap.add_argument("--config", help="JSON file of option defaults (flags win)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream matchings as JSONL")
    _add_common(p)
    p.add_argument("--size", type=int, help="edge count (default from gamma)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("switchgraph", help="build H_k and report properties")
    _add_common(p)
    p.add_argument("--c", default="2", help="constant for giant/thaw/cluster")
    p.add_argument("--assert-prop", choices=["connect", "giant", "noiso", "thaw", "cluster"],
                   help="exit 4 unless the property holds")
    p.set_defaults(func=cmd_switchgraph)

    p = sub.add_parser("path", help="construct and validate k-switch paths")
    _add_common(p)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--source", help="matching edge list as JSON")
    p.add_argument("--target", help="matching edge list as JSON")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("chain", help="chain diagnostics and simulation")
    _add_common(p)
    p.add_argument("--chain", choices=["gamma4", "switch2", "switch3"],
                   default="gamma4")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--congestion", action="store_true")
    p.add_argument("--steps", type=int, default=0)
    p.add_argument("--omega-cap", type=int, default=5000)
    p.add_argument("--trajectory", help="CSV file for step,matching")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("construct", help="emit a generator-family graph")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bridge", help="matching <-> digraph translations")
    _add_common(p)
    p.add_argument("--mode", choices=["to-digraph", "to-bip"], default="to-digraph")
    p.add_argument("--matching", help="matching edge list as JSON")
    p.add_argument("--digraph", help="digraph JSON path (to-bip)")
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser(
        "scan", help="empirical threshold scan (CSV)",
        description="Per-delta witness probe. CSV columns: "
                    "n,k,gamma,delta,property,witness_found,witness_file.")
    _add_common(p)
    p.add_argument("--property", choices=["connect", "giant", "noiso", "thaw", "cluster"],
                   default="connect")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--c", default="2")
    p.add_argument("--workers", type=int, default=1,
                   help="process pool size for the per-delta sweep")
    p.add_argument("--witness-dir", help="directory for witness graph JSON files")
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.config:
            defaults = json.loads(Path(args.config).read_text())
            if not isinstance(defaults, dict):
                raise ConfigError("config file must hold a JSON object")
            subparser = ap._subparsers._group_actions[0].choices[args.command]
            known = {a.dest for a in subparser._actions}
            unknown = sorted(set(defaults) - known)
            if unknown:
                raise ConfigError(f"unknown config keys: {unknown}")
            # config supplies defaults; explicit flags win on the re-parse
            subparser.set_defaults(**defaults)
            args = ap.parse_args(argv)
        print(f"resolved config: {json.dumps(_meta(args)['config'], default=str)}",
              file=sys.stderr)
        return args.func(args)
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (EnumerationBudgetExceeded, OmegaTooLarge) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except MatchSwitchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
