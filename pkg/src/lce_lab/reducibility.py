"""Translation witnesses and exact checkers for approximation reducibility.

A witness packages a rational translation function with a positive constant.
The strict check at a sample q below the target's limit asks, with every
comparison exact:

    phi(q) defined,  phi(q) < alpha,  alpha - phi(q) < c * (beta - q)

The weakened variant allows an additive slack of 2**-|q| on the right side
and is therefore restricted to dyadic samples, the only place |q| means
anything.  Checkers work through finite sample lists and certify refutations
or report "no violation found on N samples"; they never claim the universally
quantified statement.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .dyadic import dyadic_length, is_dyadic, truncate
from .errors import ConfigError
from .reals import DeskReal
from .util import rational_str

_ZERO = Fraction(0)
_ONE = Fraction(1)

REASON_UNDEFINED = "undefined"
REASON_NOT_BELOW_ALPHA = "not_below_alpha"
REASON_GAP_BOUND = "gap_bound_failed"


@dataclass(frozen=True)
class TranslationWitness:
    """A candidate reduction: q -> phi(q) with constant c.

    ``total`` promises a value for every rational input; partial witnesses may
    return None (undefined).  ``weakened`` switches the checker to the variant
    with the 2**-|q| slack.
    """

    name: str
    translate: Callable[[Fraction], Optional[Fraction]]
    constant: Fraction
    total: bool = True
    weakened: bool = False

    def __post_init__(self):
        if self.constant <= 0:
            raise ConfigError(f"witness constant must be positive, got {self.constant}")


@dataclass(frozen=True)
class Violation:
    sample: Fraction
    reason: str
    phi: Optional[Fraction]
    bound: Optional[Fraction]


@dataclass
class ViolationReport:
    """Outcome of checking one witness over a finite sample list."""

    witness: str
    samples_checked: int
    skipped: int
    violations: list[Violation] = field(default_factory=list)
    max_ratio_seen: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "witness": self.witness,
            "passed": self.passed,
            "samples_checked": self.samples_checked,
            "skipped": self.skipped,
            "max_ratio_seen": (
                rational_str(self.max_ratio_seen) if self.max_ratio_seen is not None else None
            ),
            "violations": [
                {
                    "q": rational_str(v.sample),
                    "reason": v.reason,
                    "phi_q": rational_str(v.phi) if v.phi is not None else None,
                    "bound": rational_str(v.bound) if v.bound is not None else None,
                }
                for v in self.violations
            ],
        }


def check_witness(
    alpha: DeskReal,
    beta: DeskReal,
    witness: TranslationWitness,
    samples: Iterable[Fraction],
    workers: int = 1,
) -> ViolationReport:
    """Evaluate the witness inequality at every sample below beta's limit.

    Samples at or above beta's limit are skipped (and counted).  Order of the
    input does not matter: violations come back sorted by sample value.
    """
    a_limit, b_limit = alpha.limit, beta.limit
    c = witness.constant
    translate = witness.translate
    weakened = witness.weakened
    plain_constant = c == 1
    # 2**-|q| for canonical dyadic q is exactly 1/denominator; cache per
    # denominator so million-sample sweeps skip repeated construction.
    slack_cache: dict[int, Fraction] = {}

    def slack_term(q: Fraction) -> Fraction:
        den = q.denominator
        value = slack_cache.get(den)
        if value is None:
            if den & (den - 1) or q.numerator < 0 or q.numerator >= den:
                dyadic_length(q)  # raises the proper domain error
            value = slack_cache[den] = Fraction(1, den)
        return value

    def eval_one(q: Fraction):
        # -> (kind, sample, phi, bound, ratio_num, ratio_den)
        if not q < b_limit:
            return ("skip", q, None, None, None, None)
        phi = translate(q)
        if phi is None:
            return (REASON_UNDEFINED, q, None, None, None, None)
        if not phi < a_limit:
            return (REASON_NOT_BELOW_ALPHA, q, phi, None, None, None)
        denom = b_limit - q
        diff = a_limit - phi
        bound = denom if plain_constant else c * denom
        if weakened:
            bound = bound + slack_term(q)
        kind = "ok" if diff < bound else REASON_GAP_BOUND
        # Ratio (alpha - phi) / (beta - q), tracked as an int pair (no division).
        return (kind, q, phi, bound, diff.numerator * denom.denominator, diff.denominator * denom.numerator)

    checked = 0
    skipped = 0
    violations: list[Violation] = []
    best_num = best_den = None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(eval_one, samples, chunksize=1024))
        for kind, q, phi, bound, rnum, rden in rows:
            if kind == "skip":
                skipped += 1
                continue
            checked += 1
            if rnum is not None and (best_num is None or rnum * best_den > best_num * rden):
                best_num, best_den = rnum, rden
            if kind != "ok":
                violations.append(Violation(q, kind, phi, bound))
    else:
        for q in samples:
            if not q < b_limit:
                skipped += 1
                continue
            checked += 1
            phi = translate(q)
            if phi is None:
                violations.append(Violation(q, REASON_UNDEFINED, None, None))
                continue
            if not phi < a_limit:
                violations.append(Violation(q, REASON_NOT_BELOW_ALPHA, phi, None))
                continue
            denom = b_limit - q
            diff = a_limit - phi
            bound = denom if plain_constant else c * denom
            if weakened:
                bound = bound + slack_term(q)
            rnum = diff.numerator * denom.denominator
            rden = diff.denominator * denom.numerator
            if best_num is None or rnum * best_den > best_num * rden:
                best_num, best_den = rnum, rden
            if not diff < bound:
                violations.append(Violation(q, REASON_GAP_BOUND, phi, bound))
    violations.sort(key=lambda v: v.sample)
    return ViolationReport(
        witness=witness.name,
        samples_checked=checked,
        skipped=skipped,
        violations=violations,
        max_ratio_seen=Fraction(best_num, best_den) if best_num is not None else None,
    )


def identity_witness(constant: Fraction = Fraction(2)) -> TranslationWitness:
    """phi = id.  Certifies a real against itself for any constant above 1."""
    return TranslationWitness(
        name="identity", translate=lambda q: q, constant=Fraction(constant)
    )


def scaling_witness(r: Fraction, direction: str) -> TranslationWitness:
    """Witness for the scale-equivalence r*x = x.

    forward certifies r*x below x via phi(q) = r*q; backward certifies x below
    r*x via phi(q) = q/r.  The strict inequality forces a constant strictly
    above the contraction factor, hence r+1 and 1/r+1 rather than r and 1/r.
    """
    r = Fraction(r)
    if r <= 0:
        raise ConfigError(f"scaling factor must be positive, got {r}")
    if direction == "forward":
        return TranslationWitness(
            name=f"scaling({r},forward)", translate=lambda q: r * q, constant=r + 1
        )
    if direction == "backward":
        return TranslationWitness(
            name=f"scaling({r},backward)", translate=lambda q: q / r, constant=1 / r + 1
        )
    raise ConfigError(f"scaling direction must be forward or backward, got {direction!r}")


def compose_witnesses(outer: TranslationWitness, inner: TranslationWitness) -> TranslationWitness:
    """q -> outer(inner(q)) with the product constant.

    If the pieces certify alpha below beta and beta below gamma, the composite
    is the transitivity witness for alpha below gamma on compatible samples.
    """
    if outer.weakened or inner.weakened:
        raise ConfigError("composition is defined for strict-variant witnesses only")

    def translate(q: Fraction) -> Optional[Fraction]:
        mid = inner.translate(q)
        return None if mid is None else outer.translate(mid)

    return TranslationWitness(
        name=f"{outer.name}.{inner.name}",
        translate=translate,
        constant=outer.constant * inner.constant,
        total=outer.total and inner.total,
    )


_LEAST_WITNESS_PRECISION = 64


def _canonical_dyadic(q: Fraction, precision: int = _LEAST_WITNESS_PRECISION) -> Fraction:
    """Map any rational to a dyadic in [0,1): identity on such values,
    truncation at ``precision`` bits elsewhere (mere totality filler)."""
    if _ZERO <= q < _ONE and is_dyadic(q):
        return q
    top = _ONE - Fraction(1, 1 << precision)
    q = min(max(q, _ZERO), top)
    return truncate(q, precision).value


def computable_least_witness(alpha: DeskReal) -> TranslationWitness:
    """Weakened-variant witness placing a real with known rational limit below
    every other real with constant 1.

    phi answers a dyadic q with a truncation of alpha at |q|+1 bits, so the
    miss is under 2**-|q| and the slack term alone absorbs it.  When alpha is
    itself dyadic the truncation could land exactly on alpha; the padded form
    alpha - 2**-(|q|+2) keeps strictness.
    """
    a = alpha.limit
    whole = a.numerator // a.denominator
    frac_part = a - whole
    dyadic_alpha = is_dyadic(frac_part)
    cache: dict[int, Fraction] = {}

    def translate(q: Fraction) -> Fraction:
        num, den = q.numerator, q.denominator
        if not (den & (den - 1)) and 0 <= num < den:
            length = den.bit_length() - 1  # canonical dyadic in [0,1)
        else:
            length = dyadic_length(_canonical_dyadic(q))
        value = cache.get(length)
        if value is None:
            if dyadic_alpha:
                value = a - Fraction(1, 1 << (length + 2))
            else:
                value = whole + truncate(frac_part, length + 1).value
            cache[length] = value
        return value

    return TranslationWitness(
        name=f"least({alpha.name})",
        translate=translate,
        constant=_ONE,
        total=True,
        weakened=True,
    )


# ---------------------------------------------------------------------------
# Sample schedules


def dyadic_grid(depth: int, below: Fraction) -> list[Fraction]:
    """All multiples of 2**-depth in [0, below), ascending."""
    if depth < 0:
        raise ConfigError(f"grid depth must be >= 0, got {depth}")
    den = 1 << depth
    # k ranges over 0 <= k < below * den; ceil gives the right count whether
    # or not the bound lands on the grid (strict inequality either way).
    count = -(-(below.numerator * den) // below.denominator)
    return [Fraction(k, den) for k in range(max(count, 0))]


def dyadic_samples(below: Fraction, count: int) -> list[Fraction]:
    """The first ``count`` dyadic rationals below the bound, from the shallowest
    grid that holds that many."""
    if below <= 0:
        raise ConfigError(f"sample bound must be positive, got {below}")
    if count < 1:
        raise ConfigError(f"sample count must be positive, got {count}")
    depth = 0
    while True:
        grid = dyadic_grid(depth, below)
        if len(grid) >= count:
            return grid[:count]
        depth += 1


def default_samples(
    beta: DeskReal, approx_count: int = 64, grid_depth: int = 10
) -> list[Fraction]:
    """Approximation points of the target real plus a dyadic grid below its
    limit; the approximation points are the proof-relevant witnesses."""
    points = {beta.approx(i) for i in range(approx_count + 1)}
    points.update(dyadic_grid(grid_depth, beta.limit))
    return sorted(q for q in points if q < beta.limit)
