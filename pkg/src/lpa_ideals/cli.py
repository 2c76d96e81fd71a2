"""Command line front end.

Exit codes: 0 success, 1 input error, 2 the requested object does not exist
(for example no prime factorization), 3 a verification failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from .classify import (
    every_ideal_prime,
    every_ideal_product_of_primes,
    every_ideal_product_of_semiprimes,
    every_ideal_semiprime,
    is_prime,
    is_semiprime,
    primary_report,
)
from .factor import VerificationError, prime_factorization, semiprime_factorization
from .field_poly import DEFAULT_QDEG, DegreeBoundError, Field
from .graph import (
    DEFAULT_MAX_CYCLES,
    OMEGA,
    GraphError,
    admissible_pairs,
    condition_K,
    condition_L,
    hereditary_saturated_sets,
    is_chain,
    maximal_tails,
    quotient_graph,
    simple_cycles,
)
from .ideal import IdealError, contains, ideal_sum, intersect, product, radical
from .oracle import OracleError, cross_check
from .serialize import (
    InputError,
    dumps,
    graph_from_json,
    ideal_from_json,
    ideal_to_json,
    load_json,
    to_dot,
)

EXIT_OK, EXIT_INPUT, EXIT_ABSENT, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_SEED = 20240601


class _Absent(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("reason", "absent"))
        self.report = report


def _load_graph(path: str):
    return graph_from_json(load_json(path), where=path)


def _load_ideal(g, path: str, field: Field):
    return ideal_from_json(g, load_json(path), field, where=path)


def _sorted_sets(sets) -> list[list[str]]:
    return sorted(sorted(s) for s in sets)


def _count_cycles(g, cap: int) -> int | str:
    total = sum(count for _, count in simple_cycles(g, cap))
    return "omega" if total == OMEGA else int(total)


def _cert_json(cert) -> dict:
    return {"target": ideal_to_json(cert.target), "kind": cert.kind,
            "factors": [ideal_to_json(f) for f in cert.factors], "verified": cert.verified}


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> dict:
    g = _load_graph(args.graph)
    k, l = condition_K(g), condition_L(g)
    pairs = admissible_pairs(g)
    primes = every_ideal_prime(g)
    return {
        "vertices": list(g.vertices),
        "sinks": list(g.sinks),
        "regular": [v for v in g.vertices if g.is_regular(v)],
        "infinite_emitters": list(g.infinite_emitters),
        "simple_cycles": _count_cycles(g, args.max_cycles),
        "condition_K": {"holds": k.holds, "witness": str(k.witness) if k.witness else None},
        "condition_L": {"holds": l.holds, "witness": str(l.witness) if l.witness else None},
        "maximal_tails": _sorted_sets(maximal_tails(g)),
        "hereditary_saturated_sets": _sorted_sets(hereditary_saturated_sets(g)),
        "admissible_pairs": len(pairs),
        "admissible_chain": is_chain(pairs),
        "every_ideal_prime": primes.holds,
        "every_ideal_prime_witness": (str(primes.cycle) if primes.cycle
                                      else [str(p) for p in primes.pairs] if primes.pairs else None),
        "every_ideal_semiprime": every_ideal_semiprime(g).holds,
        "every_ideal_product_of_primes": every_ideal_product_of_primes(g).holds,
        "every_ideal_product_of_semiprimes": every_ideal_product_of_semiprimes(g, args.max_cycles).holds,
    }


def cmd_ideal(args) -> dict:
    g = _load_graph(args.graph)
    I = _load_ideal(g, args.ideal, args.field)
    if args.query == "classify":
        pr = is_prime(I, args.qdeg)
        pw = primary_report(I, args.qdeg)
        return {
            "ideal": ideal_to_json(I),
            "prime": pr.holds,
            "prime_case": pr.case,
            "breaking_vertex": pr.breaking_vertex,
            "semiprime": is_semiprime(I),
            "prime_power": pw.holds,
            "prime_power_witness": ({"P": ideal_to_json(pw.prime), "n": pw.n} if pw.holds else None),
        }
    if args.query == "radical":
        return ideal_to_json(radical(I))
    if args.query == "factor-prime":
        cert = prime_factorization(I, args.qdeg)
        if cert is None:
            raise _Absent({"ideal": ideal_to_json(I), "factorization": None,
                           "reason": "quotient is not covered by enough maximal tails"})
        return _cert_json(cert)
    return _cert_json(semiprime_factorization(I, args.qdeg))


def cmd_binop(args) -> dict:
    g = _load_graph(args.graph)
    A = _load_ideal(g, args.a, args.field)
    B = _load_ideal(g, args.b, args.field)
    if args.op == "contains":
        return {"contains": contains(A, B)}
    op = {"product": product, "intersect": intersect, "sum": ideal_sum}[args.op]
    return ideal_to_json(op(A, B))


def cmd_oracle(args) -> dict:
    g = _load_graph(args.graph)
    report = cross_check(g, args.trials, args.seed, args.field, args.max_degree)
    if not report.ok:
        raise VerificationError(report.dumps())
    return report.to_json()


def cmd_export_dot(args) -> str:
    g = _load_graph(args.graph)
    if args.ideal:
        I = _load_ideal(g, args.ideal, args.field)
        return to_dot(quotient_graph(g, I.pair), name="quotient")
    return to_dot(g)


# ---------------------------------------------------------------------------
# driver


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None, help="Q or Fp:<prime> (default Q)")
    common.add_argument("--qdeg", type=int, default=DEFAULT_QDEG, help="degree bound for factoring over Q")
    common.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")

    p = argparse.ArgumentParser(prog="lpa-ideals", description="Ideal computations for Leavitt path algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="graph invariants and global ideal properties")
    a.add_argument("graph")
    a.set_defaults(run=cmd_analyze)

    i = sub.add_parser("ideal", parents=[common], help="classify, radical or factor one ideal")
    i.add_argument("graph")
    i.add_argument("ideal")
    i.add_argument("query", choices=["classify", "radical", "factor-prime", "factor-semiprime"])
    i.set_defaults(run=cmd_ideal)

    b = sub.add_parser("binop", parents=[common], help="combine two ideals")
    b.add_argument("graph")
    b.add_argument("a")
    b.add_argument("b")
    b.add_argument("op", choices=["product", "intersect", "sum", "contains"])
    b.set_defaults(run=cmd_binop)

    o = sub.add_parser("oracle", parents=[common], help="cross-check against an independent model")
    o.add_argument("graph")
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--max-degree", type=int, default=6)
    o.set_defaults(run=cmd_oracle)

    d = sub.add_parser("export-dot", parents=[common], help="Graphviz output of a graph or quotient")
    d.add_argument("graph")
    d.add_argument("--ideal", help="export the quotient by this ideal's graded part")
    d.set_defaults(run=cmd_export_dot)
    return p


def _render(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for key, val in obj.items():
            if not _simple(val):
                out.append(f"{pad}{key}:")
                out.extend(_render(val, indent + 1))
            else:
                out.append(f"{pad}{key}: {_flat(val)}")
        return out
    if isinstance(obj, list):
        out = []
        for val in obj:
            sub = _render(val, indent + 1)
            out.append(f"{pad}- " + sub[0].lstrip() if sub else f"{pad}-")
            out.extend(sub[1:])
        return out
    return [pad + _flat(obj)]


def _simple(val: Any) -> bool:
    """Scalars, lists of lists of scalars, and dicts of scalars print on one line."""
    if isinstance(val, dict):
        return all(not isinstance(x, (dict, list)) for x in val.values())
    if isinstance(val, list):
        return all(not isinstance(x, dict) and _simple(x) for x in val)
    return True


def _flat(val: Any) -> str:
    if isinstance(val, dict):
        return "{" + ", ".join(f"{k}: {_flat(v)}" for k, v in val.items()) + "}"
    if isinstance(val, list):
        return "[" + ", ".join(_flat(v) for v in val) + "]"
    if val is None:
        return "-"
    return str(val).lower() if isinstance(val, bool) else str(val)


def _emit(obj: Any, as_json: bool) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    elif as_json:
        sys.stdout.write(dumps(obj))
    else:
        print("\n".join(_render(obj)))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "binop":
        args.json = True
    if args.field is None:
        args.field = None if args.command in ("ideal", "binop", "export-dot") else Field.parse("Q")
    try:
        result = args.run(args)
    except _Absent as exc:
        _emit(exc.report, args.json)
        return EXIT_ABSENT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, GraphError, IdealError, OracleError, DegreeBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(result, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
