"""Command-line interface.

Exit codes: 0 success (every verdict Salem of degree 22), 1 invalid input or
failed precondition, 2 internal consistency error, 3 a computation finished
but the verdict is not Salem of degree 22.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from .errors import ConsistencyError, InputError, K3SalemError, PreconditionError

log = logging.getLogger("k3salem")

EXIT_OK, EXIT_PRECONDITION, EXIT_CONSISTENCY, EXIT_NOT_SALEM = 0, 1, 2, 3
OUTPUT_ENV = "K3SALEM_OUTPUT_DIR"


def _emit(obj, as_json: bool, human: str | None = None) -> None:
    if as_json or human is None:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(human)


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot parse prime list {text!r}") from None


def _word(text: str) -> list[str]:
    return [w.strip() for w in text.split(",") if w.strip()]


def _out_dir(arg: str | None) -> Path:
    d = Path(arg or os.environ.get(OUTPUT_ENV) or "k3salem-report")
    d.mkdir(parents=True, exist_ok=True)
    return d


# ---------------------------------------------------------------------------


def cmd_ns_build(args) -> int:
    from .ns_model import build_ns_model, ns_summary

    model = build_ns_model(args.p)
    data = ns_summary(model)
    human = (f"NS(X({model.p})), n = {model.n}: det {data['det']}, signature {tuple(data['signature'])}, "
             f"discriminant group {data['invariantFactors']}, artin invariant {data['artinInvariant']}\n"
             + "\n".join(f"  {k}: {'ok' if v else 'FAIL'}" for k, v in data["checks"].items()))
    _emit(data, args.json, human)
    return EXIT_OK if all(data["checks"].values()) else EXIT_CONSISTENCY


def cmd_fibration_find(args) -> int:
    from .fibration import find_ade_configurations
    from .ns_model import build_ns_model, curve_graph

    model = build_ns_model(args.p)
    configs = find_ade_configurations(curve_graph(model), model)
    if args.json:
        _emit([c.to_json() for c in configs], True)
    else:
        from collections import Counter

        counts = Counter(c.kind for c in configs)
        print(f"{len(configs)} extended Dynkin configurations on the known curves of X({args.p})")
        for kind, k in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
            print(f"  {kind:6s} {k}")
    return EXIT_OK


def cmd_fibration_height(args) -> int:
    from .fibration import as_section, fibration_by_name, height_pairing
    from .ns_model import build_ns_model
    from .salem import parse_token

    model = build_ns_model(args.p)
    toks = _word(args.sections)
    if len(toks) != 2:
        raise InputError("--sections takes exactly two entries, e.g. P,R or P',P'")
    (a, fa), (b, fb) = (parse_token(t) for t in toks)
    if fa != fb:
        raise InputError("both sections must live on the same fibration")
    f = fibration_by_name(model, fa)
    try:
        S = [as_section(f.section(lab), f, lab) for lab in (a, b)]
    except KeyError as e:
        raise InputError(str(e)) from None
    print(str(height_pairing(S[0], S[1], f)))
    return EXIT_OK


def cmd_verify_sections(args) -> int:
    from .weierstrass import section_checks

    data = section_checks(args.p)
    _emit(data, True)
    return EXIT_OK if all(data.values()) else EXIT_CONSISTENCY


def cmd_salem_run(args) -> int:
    from .ns_model import build_ns_model
    from .salem import DEFAULT_WORD, compose_word, salem_number_and_entropy, salem_verdict

    model = build_ns_model(args.p)
    word = _word(args.word) if args.word is not None else list(DEFAULT_WORD)
    v = salem_verdict(compose_word(word, model))
    out = {
        "p": args.p,
        "word": word,
        "mu": v.mu.to_json(),
        "g": v.trace_g.to_json() if v.trace_g is not None else None,
        "cyclotomicFactors": [str(k) for k in v.cyclotomic_factors],
        "isSalem22": v.is_salem22,
        "salemNumber": None,
        "entropy": None,
    }
    if v.trace_g is not None:
        a, h = salem_number_and_entropy(v)
        out["salemNumber"], out["entropy"] = a.decimal(), h.decimal()
    human = (f"p = {args.p}, word {','.join(word)}: Salem degree {v.salem_degree}, "
             f"isSalem22 = {v.is_salem22}, cyclotomic factors {v.cyclotomic_factors or 'none'}")
    if out["salemNumber"]:
        human += f"\n  salem number in {out['salemNumber']}\n  entropy in {out['entropy']}"
    _emit(out, args.json, human)
    return EXIT_OK if v.is_salem22 else EXIT_NOT_SALEM


def write_report(results, out: Path) -> list[Path]:
    """report.json, summary.tsv and figures; returns the written paths."""
    from .pipeline import PipelineReport
    from .plotting import plot_entropy, plot_spectrum

    written = []
    path = out / "report.json"
    path.write_text(json.dumps([r.to_json() for r in results], indent=2) + "\n")
    written.append(path)
    path = out / "summary.tsv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["p", "n", "status", "det", "salem_degree", "is_salem22",
                    "salem_lo", "salem_hi", "entropy_lo", "entropy_hi"])
        for r in results:
            if isinstance(r, PipelineReport):
                a, h = r.salem_number or ["", ""], r.entropy or ["", ""]
                w.writerow([r.p, r.n, "ok", r.det, r.verdict["salemDegree"], r.is_salem22,
                            a[0], a[1], h[0], h[1]])
            else:
                w.writerow([r.p, "", f"{r.kind}@{r.stage}", "", "", "", "", "", "", ""])
    written.append(path)
    ok = [r for r in results if isinstance(r, PipelineReport)]
    for r in ok:
        written.append(plot_spectrum(r.mu, out / f"spectrum_p{r.p}.png",
                                     title=f"eigenvalues of f* on NS(X({r.p}))"))
    with_h = [r for r in ok if r.entropy]
    if len(with_h) >= 2:
        mids = [(float(r.entropy[0]) + float(r.entropy[1])) / 2 for r in with_h]
        written.append(plot_entropy([r.p for r in with_h], mids, out / "entropy.png"))
    return written


def cmd_pipeline(args) -> int:
    from .pipeline import PipelineReport, batch
    from .salem import DEFAULT_WORD

    primes = _primes(args.primes)
    word = _word(args.word) if args.word is not None else list(DEFAULT_WORD)
    results = batch(primes, jobs=args.jobs, word=word)
    if not args.no_files:
        for path in write_report(results, _out_dir(args.out)):
            log.info("wrote %s", path)
    if args.json:
        _emit([r.to_json() for r in results], True)
    else:
        for r in results:
            if isinstance(r, PipelineReport):
                print(f"p={r.p:<4d} det={r.det:<6d} salem22={r.is_salem22!s:5s} "
                      f"a in [{', '.join(r.salem_number or ['-'])}]")
            else:
                print(f"p={r.p:<4d} {r.kind} at stage {r.stage}: {r.message}")
    failures = [r for r in results if not isinstance(r, PipelineReport)]
    if any(f.kind in ("ConsistencyError", "UnclassifiedFactorError") for f in failures):
        return EXIT_CONSISTENCY
    if failures:
        return EXIT_PRECONDITION
    return EXIT_OK if all(r.is_salem22 for r in results) else EXIT_NOT_SALEM


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3salem", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    ns = sub.add_parser("ns").add_subparsers(dest="action", required=True)
    p = ns.add_parser("build", help="Gram matrix and lattice checks of NS(X(p))")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ns_build)

    fib = sub.add_parser("fibration").add_subparsers(dest="action", required=True)
    p = fib.add_parser("find", help="extended Dynkin configurations among the known curves")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fibration_find)
    p = fib.add_parser("height", help="height pairing of two sections (primes select the fibration)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sections", required=True)
    p.set_defaults(func=cmd_fibration_height)

    ver = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    p = ver.add_parser("sections", help="check the explicit sections on the Weierstrass models")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_verify_sections)

    sal = sub.add_parser("salem").add_subparsers(dest="action", required=True)
    p = sal.add_parser("run", help="compose translations and certify the Salem factor")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--word", help="comma separated, e.g. R,P,P',P''")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_salem_run)

    p = sub.add_parser("pipeline", help="full run over several primes, with report files")
    p.add_argument("--primes", required=True)
    p.add_argument("--word")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./k3salem-report)")
    p.add_argument("--no-files", action="store_true", help="skip report.json, summary.tsv and figures")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ConsistencyError, K3SalemError) as e:
        print(f"internal consistency error: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
