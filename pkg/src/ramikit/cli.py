"""Command-line interface.

Subcommands: ``info`` (parse and validate a presentation file), ``ramify``
(ramification and cohomology data for one cover), ``verify`` (build a census
and run every suite), ``census`` (one CSV row of invariants per cover).

Exit codes: 0 success, 1 suite failure, 2 input error, 3 coset limit
exceeded, 4 invalid subgroup/flag specification.  The environment variable
RAMIKIT_MAX_COSETS overrides the default enumeration ceiling.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from .cohomology import inflation_check
from .cosets import (DEFAULT_MAX_COSETS, CosetLimitExceeded, CyclicCover,
                     GeneratorWords, IncompatiblePermRep, PermRep,
                     todd_coxeter)
from .harness import build_census, build_cover, run_suites
from .linalg import is_prime
from .parsing import ParseError, parse_presentation, parse_word, word_to_text
from .perms import perm_from_cycles
from .presentations import (KnotGroupData, KnotValidationError, abelianization,
                            validate_knot_group)
from .ramification import LongitudeMissing, unramified_quotient

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_INPUT = 2
EXIT_COSET_LIMIT = 3
EXIT_SPEC = 4


class _SpecError(ValueError):
    pass


def _max_cosets(args) -> int:
    if args.max_cosets is not None:
        return args.max_cosets
    env = os.environ.get("RAMIKIT_MAX_COSETS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise _SpecError(f"bad RAMIKIT_MAX_COSETS value {env!r}") from exc
    return DEFAULT_MAX_COSETS


def _load(args) -> KnotGroupData:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc}", 0, 0)
    data = parse_presentation(text, require_knot=False,
                              label=Path(args.file).stem)
    report = validate_knot_group(data)
    if not report.passed:
        if getattr(args, "strict", False):
            raise KnotValidationError(report)
        print(f"warning: knot-group validation: {report}", file=sys.stderr)
    return data


def _parse_primes(spec: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(tok) for tok in spec.split(",") if tok.strip())
    except ValueError as exc:
        raise _SpecError(f"bad prime list {spec!r}") from exc
    if not primes or not all(is_prime(p) for p in primes):
        raise _SpecError(f"prime list {spec!r} must contain primes only")
    return primes


def _parse_perm_spec(spec: str, data: KnotGroupData, degree: int | None,
                     point: int) -> PermRep:
    names = data.presentation.generator_names
    assignments: dict[str, list[list[int]]] = {}
    max_point = 1
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise _SpecError(f"bad permutation assignment {chunk!r}")
        name, _, cyc = chunk.partition("=")
        name = name.strip()
        if name not in names:
            raise _SpecError(f"unknown generator {name!r} in --perm")
        cycles = []
        body = cyc.strip()
        if body in ("()", ""):
            body = ""
        while body:
            if not body.startswith("("):
                raise _SpecError(f"bad cycle syntax in {cyc!r}")
            end = body.index(")") if ")" in body else -1
            if end < 0:
                raise _SpecError(f"unbalanced parentheses in {cyc!r}")
            points = [tok for tok in body[1:end].replace(",", " ").split()]
            try:
                cycle = [int(tok) for tok in points]
            except ValueError as exc:
                raise _SpecError(f"bad cycle entries in {cyc!r}") from exc
            if len(cycle) < 2:
                raise _SpecError(f"cycles need at least two points: {cyc!r}")
            cycles.append(cycle)
            max_point = max(max_point, *cycle)
            body = body[end + 1:].strip()
        assignments[name] = cycles
    k = degree if degree is not None else max(max_point, point)
    try:
        images = tuple(perm_from_cycles(assignments.get(name, []), k)
                       for name in names)
    except ValueError as exc:
        raise _SpecError(str(exc)) from exc
    return PermRep(images=images, point=point)


def _subgroup_spec(args, data: KnotGroupData):
    chosen = [flag for flag in ("cyclic", "perm", "gens")
              if getattr(args, flag, None) is not None]
    if len(chosen) != 1:
        raise _SpecError("choose exactly one of --cyclic, --perm, --gens")
    if args.cyclic is not None:
        if args.cyclic < 1:
            raise _SpecError("--cyclic degree must be >= 1")
        return CyclicCover(args.cyclic)
    if args.perm is not None:
        return _parse_perm_spec(args.perm, data, args.degree, args.point)
    words = tuple(parse_word(tok, data.presentation.generator_names)
                  for tok in args.gens.split(",") if tok.strip())
    return GeneratorWords(words=words)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_info(args) -> int:
    data = _load(args)
    report = validate_knot_group(data)
    pres = data.presentation
    inv = abelianization(pres)
    if args.json:
        payload = {
            "label": data.label,
            "generators": list(pres.generator_names),
            "relators": [word_to_text(r, pres.generator_names)
                         for r in pres.relators],
            "abelianization": str(inv),
            "meridian": word_to_text(data.meridian, pres.generator_names),
            "longitude": (word_to_text(data.longitude, pres.generator_names)
                          if data.longitude is not None else None),
            "validation": {name: ok for name, ok, _ in report.checks},
            "valid_knot_group": report.passed,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [
            f"label:          {data.label}",
            f"generators:     {' '.join(pres.generator_names)}",
            f"relators:       {len(pres.relators)}",
        ]
        lines.extend(f"  rel: {word_to_text(r, pres.generator_names)}"
                     for r in pres.relators)
        lines.append(f"abelianization: {inv}")
        lines.append(f"meridian:       "
                     f"{word_to_text(data.meridian, pres.generator_names)}")
        for name, ok, msg in report.checks:
            lines.append(f"check {name}: {'pass' if ok else 'FAIL'}"
                         + (f" ({msg})" if msg and not ok else ""))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_ramify(args) -> int:
    data = _load(args)
    spec = _subgroup_spec(args, data)
    primes = _parse_primes(args.primes)
    table = todd_coxeter(data.presentation, spec, _max_cosets(args))
    cover = build_cover(data, _spec_label(spec), table)
    quotient_pres = unramified_quotient(cover.spres, cover.inertia)
    checks = [inflation_check(cover.spres, quotient_pres, cover.inertia, p)
              for p in primes]
    g_names = data.presentation.generator_names
    if args.json:
        payload = cover.report.to_json_dict(g_names)
        payload["cohomology"] = [c.to_json_dict() for c in checks]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        rep = cover.report
        u_names = cover.spres.presentation.generator_names
        lines = [
            f"cover:                {rep.label} (index {rep.index})",
            f"ramification indices: {list(rep.ramification_indices())}",
            f"H1(cover):            {rep.h1_u}",
            f"H1(unramified quot):  {rep.h1_quotient}",
        ]
        if rep.boundary_tori is not None:
            lines.append(f"boundary tori:        {rep.boundary_tori}")
        for d in rep.inertia:
            lines.append(
                f"  inertia at coset {d.rep_coset}: e={d.ramification_index}, "
                f"generator {word_to_text(d.generator_in_g, g_names)}"
                f" = {word_to_text(d.generator_in_u, u_names) or '1'}")
        for c in checks:
            status = "bijective" if c.inflation_bijective else "BROKEN"
            lines.append(f"p={c.p}: dim H1(U)={c.dim_h1_u}, unramified dim="
                         f"{c.dim_unramified}, dim H1(U/M)={c.dim_h1_quotient}"
                         f", inflation {status}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _spec_label(spec) -> str:
    if isinstance(spec, CyclicCover):
        return f"cyclic-{spec.degree}"
    if isinstance(spec, PermRep):
        return f"perm-deg{len(spec.images[0]) if spec.images else 1}"
    return "gens"


def _cache_path(cache_dir: str, knot_text: str, params: str) -> Path:
    digest = hashlib.sha256((knot_text + "\n" + params).encode()).hexdigest()
    return Path(cache_dir) / f"ramikit-{digest}.json"


def cmd_verify(args) -> int:
    data = _load(args)
    primes = _parse_primes(args.primes)
    cache_file = None
    if args.cache_dir:
        knot_text = Path(args.file).read_text(encoding="utf-8")
        params = f"verify:{args.max_index}:{args.max_sym}:{primes}:{args.seed}"
        cache_file = _cache_path(args.cache_dir, knot_text, params)
        if cache_file.exists():
            text = cache_file.read_text(encoding="utf-8")
            _emit(text, args.out)
            return EXIT_OK if json.loads(text)["passed"] else EXIT_SUITE_FAILURE
    census = build_census(data, args.max_index, args.max_sym)
    for warning in census.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    report = run_suites(census, primes, args.seed)
    payload = report.to_json_dict()
    payload["passed"] = report.passed
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(text, encoding="utf-8")
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_SUITE_FAILURE


CENSUS_COLUMNS = ["label", "index", "ramification_indices", "h1_cover",
                  "h1_unramified_quotient", "boundary_tori"]


def cmd_census(args) -> int:
    data = _load(args)
    primes = _parse_primes(args.primes)
    census = build_census(data, args.max_index, max_sym_degree=1)
    if data.longitude is None:
        print("warning: no longitude given; boundary column left empty",
              file=sys.stderr)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS + [f"unramified_h1_p{p}" for p in primes])
    for cover in census.covers:
        rep = cover.report
        quotient_pres = unramified_quotient(cover.spres, cover.inertia)
        dims = [inflation_check(cover.spres, quotient_pres, cover.inertia,
                                p).dim_unramified for p in primes]
        writer.writerow([
            rep.label, rep.index,
            " ".join(map(str, rep.ramification_indices())),
            str(rep.h1_u), str(rep.h1_quotient),
            rep.boundary_tori if rep.boundary_tori is not None else "",
        ] + dims)
    _emit(buffer.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramikit",
        description="Ramification data for finite covers of knot exteriors.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, primes_default="2,3,5"):
        p.add_argument("file", help="presentation file")
        p.add_argument("--strict", action="store_true",
                       help="treat knot-group validation failures as errors")
        p.add_argument("--out", help="write output to this path")
        p.add_argument("-p", "--primes", default=primes_default,
                       help="comma-separated primes")

    p_info = sub.add_parser("info", help="parse, validate, and summarize")
    p_info.add_argument("file")
    p_info.add_argument("--strict", action="store_true")
    p_info.add_argument("--json", action="store_true")
    p_info.add_argument("--out")
    p_info.set_defaults(func=cmd_info)

    p_ram = sub.add_parser("ramify", help="ramification data for one cover")
    common(p_ram)
    p_ram.add_argument("--cyclic", type=int,
                       help="cyclic cover of this degree")
    p_ram.add_argument("--perm",
                       help='permutation action, e.g. "a=(1 2);b=(2 3)"')
    p_ram.add_argument("--gens", help="comma-separated subgroup generator words")
    p_ram.add_argument("--degree", type=int,
                       help="domain size for --perm (default: largest point)")
    p_ram.add_argument("--point", type=int, default=1,
                       help="base point for --perm (default 1)")
    p_ram.add_argument("--max-cosets", type=int, default=None)
    p_ram.add_argument("--json", action="store_true")
    p_ram.set_defaults(func=cmd_ramify)

    p_ver = sub.add_parser("verify", help="run the verification suites")
    common(p_ver)
    p_ver.add_argument("--max-index", type=int, default=3)
    p_ver.add_argument("--max-sym", type=int, default=4)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--cache-dir",
                       help="cache reports as JSON keyed by input hash")
    p_ver.set_defaults(func=cmd_verify)

    p_census = sub.add_parser("census", help="CSV of per-cover invariants")
    common(p_census)
    p_census.add_argument("--max-index", type=int, default=3)
    p_census.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, KnotValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CosetLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COSET_LIMIT
    except (IncompatiblePermRep, LongitudeMissing, _SpecError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
