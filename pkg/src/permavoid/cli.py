"""Command-line interface: JSON reports for every library operation.

Exit codes: 0 success, 1 domain errors (invalid exponents, bad inputs),
2 resource-capped inconclusive results, 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .alphas import PatternExponents, alpha_json_value, profile
from .families import FAMILY_IDS, all_unavoidable_sets, classify, enumerate_family, set_max, sigma
from .search import PermModel, SearchConfig, longest_avoiding_word, verify_word_avoids
from .verifier import load_spec, verify_prefix_avoids
from .words import Word

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_exponents(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--i", type=int, required=required)
    parser.add_argument("--j", type=int, required=required)
    parser.add_argument("--k", type=int, required=required)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=["json", "text"], default="json", help="output format"
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled utilities")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker count; results are independent of this value (currently sequential)",
    )


def _parse_params(raw: str) -> tuple[int, ...]:
    try:
        params = tuple(sorted({int(part) for part in raw.split(",") if part.strip()}))
    except ValueError:
        raise ValueError(f"cannot parse parameter list {raw!r}") from None
    if not params or any(a < 1 or a > 14 for a in params):
        raise ValueError("forbidden parameters must be a comma list of indices in 1..14")
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="permavoid", description=__doc__)
    parser.add_argument("--version", action="version", version=f"permavoid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    alphas_cmd = sub.add_parser("alphas", help="the 14 alpha values and representations")
    _add_exponents(alphas_cmd)
    _add_common(alphas_cmd)

    sigma_cmd = sub.add_parser("sigma", help="min-max bound over the unavoidable families")
    _add_exponents(sigma_cmd)
    _add_common(sigma_cmd)

    classify_cmd = sub.add_parser("classify", help="avoidable/unavoidable alphabet ranges")
    _add_exponents(classify_cmd)
    _add_common(classify_cmd)

    families_cmd = sub.add_parser("families", help="dump the family enumerations")
    families_cmd.add_argument("--family", type=int, default=None, help="restrict to one family")
    _add_exponents(families_cmd, required=False)
    _add_common(families_cmd)

    search_cmd = sub.add_parser("search", help="longest word avoiding a parameter set")
    search_cmd.add_argument("--m", type=int, required=True, help="alphabet size")
    search_cmd.add_argument(
        "--forbidden", type=str, required=True, help="comma list of alpha indices, e.g. 1,2,4,6,7"
    )
    search_cmd.add_argument("--model", choices=[m.value for m in PermModel], default="all")
    search_cmd.add_argument("--mode", choices=["abstract", "fixed"], default="abstract")
    _add_exponents(search_cmd, required=False)
    search_cmd.add_argument("--cap", type=int, default=400, help="length cap")
    search_cmd.add_argument("--budget", type=int, default=100_000_000, help="node budget")
    search_cmd.add_argument(
        "--keep-all-equal",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="also forbid four equal blocks (a 4-power)",
    )
    search_cmd.add_argument(
        "--gapped-square-completion",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="forbid 0101 whenever a gapped-square representation is forbidden",
    )
    _add_common(search_cmd)

    verify_word_cmd = sub.add_parser("verify-word", help="check one word against a parameter set")
    verify_word_cmd.add_argument("--word", type=str, required=True, help="digit string")
    verify_word_cmd.add_argument("--m", type=int, required=True)
    verify_word_cmd.add_argument("--forbidden", type=str, required=True)
    verify_word_cmd.add_argument("--model", choices=[m.value for m in PermModel], default="all")
    verify_word_cmd.add_argument("--mode", choices=["abstract", "fixed"], default="abstract")
    _add_exponents(verify_word_cmd, required=False)
    verify_word_cmd.add_argument(
        "--keep-all-equal", action=argparse.BooleanOptionalAction, default=True
    )
    verify_word_cmd.add_argument(
        "--gapped-square-completion", action=argparse.BooleanOptionalAction, default=True
    )
    _add_common(verify_word_cmd)

    verify_morphic_cmd = sub.add_parser(
        "verify-morphic", help="bounded avoidance certificate for a morphic word prefix"
    )
    verify_morphic_cmd.add_argument(
        "--spec",
        type=str,
        required=True,
        help="builtin name (h-alpha, thue-morse, ternary-thue) or JSON file path",
    )
    verify_morphic_cmd.add_argument("--forbidden", type=str, required=True)
    verify_morphic_cmd.add_argument("--model", choices=[m.value for m in PermModel], default="all")
    verify_morphic_cmd.add_argument("--umax", type=int, default=30, help="largest block length")
    verify_morphic_cmd.add_argument("--len", type=int, default=3000, dest="length")
    verify_morphic_cmd.add_argument(
        "--max-positions", type=int, default=None, help="cap on examined factor end positions"
    )
    _add_common(verify_morphic_cmd)

    return parser


def _config_echo(args: argparse.Namespace) -> dict:
    skip = {"command", "format"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = value
    return out


def _exponents_from(args: argparse.Namespace) -> PatternExponents:
    if args.i is None or args.j is None or args.k is None:
        raise ValueError("this command needs --i, --j and --k")
    return PatternExponents(args.i, args.j, args.k)


def _search_config(args: argparse.Namespace, cap: int, budget: int) -> SearchConfig:
    params = _parse_params(args.forbidden)
    exponents = None
    if args.mode == "fixed":
        exp = _exponents_from(args)
        exponents = exp.as_tuple()
    return SearchConfig.for_params(
        alphabet=args.m,
        params=params,
        model=PermModel(args.model),
        exponents=exponents,
        include_all_equal=args.keep_all_equal,
        gapped_square_completion=args.gapped_square_completion,
        length_cap=cap,
        node_budget=budget,
    )


def _run_alphas(args) -> tuple[dict, int]:
    return profile(_exponents_from(args)).as_json(), EXIT_OK


def _run_sigma(args) -> tuple[dict, int]:
    exp = _exponents_from(args)
    value, witness = sigma(exp)
    result = {
        "exponents": {"i": exp.i, "j": exp.j, "k": exp.k},
        "sigma": alpha_json_value(value),
        "witness_set": sorted(witness),
    }
    return result, EXIT_OK


def _run_classify(args) -> tuple[dict, int]:
    return classify(_exponents_from(args)).as_json(), EXIT_OK


def _run_families(args) -> tuple[dict, int]:
    ids = [args.family] if args.family is not None else list(FAMILY_IDS)
    exponents = None
    if args.i is not None or args.j is not None or args.k is not None:
        exponents = _exponents_from(args)
    families = {}
    for family_id in ids:
        sets = []
        for s in enumerate_family(family_id):
            entry: dict = {"indices": sorted(s)}
            if exponents is not None:
                entry["max"] = alpha_json_value(set_max(s, exponents))
            sets.append(entry)
        families[str(family_id)] = sets
    result: dict = {"families": families, "total_sets": len(all_unavoidable_sets())}
    if exponents is not None:
        result["exponents"] = {"i": exponents.i, "j": exponents.j, "k": exponents.k}
    return result, EXIT_OK


def _run_search(args) -> tuple[dict, int]:
    config = _search_config(args, cap=args.cap, budget=args.budget)
    outcome = longest_avoiding_word(config)
    result = outcome.as_json()
    result["forbidden_patterns"] = sorted(config.forbidden)
    return result, EXIT_OK if outcome.exhausted else EXIT_INCONCLUSIVE


def _run_verify_word(args) -> tuple[dict, int]:
    config = _search_config(args, cap=400, budget=100_000_000)
    word = Word.parse(args.word, alphabet=args.m)
    witness = verify_word_avoids(word, config)
    if witness is None:
        return {"status": "avoids", "word": word.text()}, EXIT_OK
    return {"status": "instance", "word": word.text(), "witness": witness.as_json()}, EXIT_OK


def _run_verify_morphic(args) -> tuple[dict, int]:
    spec = load_spec(args.spec)
    params = _parse_params(args.forbidden)
    certificate = verify_prefix_avoids(
        spec,
        params,
        PermModel(args.model),
        max_block_length=args.umax,
        prefix_length=args.length,
        max_positions=args.max_positions,
    )
    code = EXIT_INCONCLUSIVE if certificate.status == "partial" else EXIT_OK
    return certificate.as_json(), code


_HANDLERS = {
    "alphas": _run_alphas,
    "sigma": _run_sigma,
    "classify": _run_classify,
    "families": _run_families,
    "search": _run_search,
    "verify-word": _run_verify_word,
    "verify-morphic": _run_verify_morphic,
}


def _render_text(report: dict) -> str:
    lines = [f"permavoid {report['version']} - {report['command']}"]
    lines.append(json.dumps(report["result"], indent=2, sort_keys=True))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("permavoid: error: --threads must be at least 1", file=sys.stderr)
        return EXIT_DOMAIN_ERROR

    started = time.perf_counter()
    try:
        result, code = _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"permavoid: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    elapsed = time.perf_counter() - started

    report = {
        "tool": "permavoid",
        "version": __version__,
        "command": args.command,
        "config": _config_echo(args),
        "elapsed_seconds": round(elapsed, 6),
        "result": result,
    }
    if args.format == "text":
        print(_render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
