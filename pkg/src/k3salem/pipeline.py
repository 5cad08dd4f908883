"""End-to-end run for one prime, and batches of primes in worker processes."""
from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import K3SalemError, PreconditionError
from .fibration import (
    alternative_fibrations, as_section, height_pairing, standard_fibration,
)
from .ns_model import build_ns_model, curve_table, verify_ns_model
from .salem import (
    DEFAULT_WORD, compose_word, parse_token, salem_number_and_entropy, salem_verdict,
    translation_for,
)
from .weierstrass import section_checks

STAGES = ("build", "curve-table", "fibrations", "sections", "isometries", "composition", "verdict")


@dataclass
class PipelineReport:
    p: int
    n: int
    gram_digest: str
    det: int
    fibrations: list[dict]
    section_checks: dict
    word: list[str]
    mu: list[int]
    g: list[int]
    verdict: dict
    salem_number: list[str] | None
    entropy: list[str] | None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def is_salem22(self) -> bool:
        return bool(self.verdict.get("isSalem22"))

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "p": self.p,
            "n": self.n,
            "gramDigest": self.gram_digest,
            "detValue": str(self.det),
            "fibrationsFound": self.fibrations,
            "sectionChecks": self.section_checks,
            "word": self.word,
            "muCoeffs": [str(c) for c in self.mu],
            "gCoeffs": [str(c) for c in self.g],
            "verdict": self.verdict,
            "salemNumber": self.salem_number,
            "entropy": self.entropy,
        }
        if timings:
            out["timings"] = {k: f"{v:.3f}" for k, v in self.timings.items()}
        return out


@dataclass
class StageFailure:
    """A per-prime error collected by ``batch``."""

    p: int
    stage: str
    kind: str
    message: str

    def to_json(self) -> dict:
        return {"p": self.p, "stage": self.stage, "error": self.kind, "message": self.message}


class _Stages:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def run(self, stage: str, fn, *args):
        t0 = time.perf_counter()
        try:
            return fn(*args)
        except K3SalemError as e:
            e.stage = stage
            e.args = (f"[{stage}] {e}",)
            raise
        finally:
            self.timings[stage] = self.timings.get(stage, 0.0) + time.perf_counter() - t0


def gram_digest(gram) -> str:
    text = ";".join(",".join(str(x) for x in row) for row in gram.rows)
    return hashlib.sha256(text.encode()).hexdigest()


def _fibrations(model):
    pi = standard_fibration(model)
    p1, p2 = alternative_fibrations(model)
    return pi, p1, p2


def _translations(model, word):
    out = []
    for token in word:
        label, fib = parse_token(token)
        out.append(translation_for(model, fib, label))
    return out


def _section_checks(model, pi) -> dict:
    S = {lab: as_section(pi.section(lab), pi, lab) for lab in ("P", "R")}
    out = {
        "heightPP": str(height_pairing(S["P"], S["P"], pi)),
        "heightPR": str(height_pairing(S["P"], S["R"], pi)),
        "heightPPExpected": str(2 * model.n + Fraction(3, 2)),
    }
    if model.p > 3:
        out["weierstrass"] = section_checks(model.p)
    else:
        out["weierstrass"] = "skipped: characteristic 3"
    return out


def run_pipeline(p: int, word: Sequence[str] = DEFAULT_WORD) -> PipelineReport:
    st = _Stages()
    model = st.run("build", build_ns_model, p)
    rep = st.run("build", verify_ns_model, model)
    if not rep.ok:
        failed = [k for k, ok in rep.checks.items() if not ok]
        raise PreconditionError(f"[build] lattice checks failed: {failed}")
    st.run("curve-table", curve_table, model)
    fibs = st.run("fibrations", _fibrations, model)
    checks = st.run("sections", _section_checks, model, fibs[0])
    st.run("isometries", _translations, model, word)
    fstar = st.run("composition", compose_word, list(word), model)
    verdict = st.run("verdict", salem_verdict, fstar)
    a = h = None
    if verdict.trace_g is not None:
        ai, hi = st.run("verdict", salem_number_and_entropy, verdict)
        a, h = ai.decimal(), hi.decimal()
    return PipelineReport(
        p=p,
        n=model.n,
        gram_digest=gram_digest(model.gram),
        det=rep.det,
        fibrations=[
            {"name": f.name, "zeroSection": f.zero_label, "fibers": [x.kind for x in f.fibers],
             "eulerVisible": f.visible_euler, "eulerIrreducible": f.irreducible_euler}
            for f in fibs
        ],
        section_checks=checks,
        word=list(word),
        mu=list(verdict.mu.coeffs),
        g=list(verdict.trace_g.coeffs) if verdict.trace_g is not None else [],
        verdict={k: v for k, v in verdict.to_json().items() if k not in ("mu", "g")},
        salem_number=a,
        entropy=h,
        timings=st.timings,
    )


def _run_one(args):
    p, word = args
    try:
        return run_pipeline(p, word)
    except K3SalemError as e:
        return StageFailure(p, getattr(e, "stage", "build"), type(e).__name__, str(e))


def batch(primes: Sequence[int], jobs: int = 1, word: Sequence[str] = DEFAULT_WORD
          ) -> list[PipelineReport | StageFailure]:
    """Independent reports in input order; errors are collected, not raised."""
    tasks = [(p, tuple(word)) for p in primes]
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_run_one, tasks))
