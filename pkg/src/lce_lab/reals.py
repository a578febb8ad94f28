"""Left-c.e. reals at desk scale: monotone approximations plus an oracle limit.

A ``DeskReal`` packages a total map n -> a_n (exact rationals, nondecreasing)
with the exact limit the sequence converges to.  The limit is an oracle in
the following sense: construction code for witnesses must never read it;
only checkers and reporters may.  That discipline is by convention, not
enforcement, and is what lets finite experiments mirror statements about
non-computable truth.

Gallery kinds:

* ``geometric``   a_n = limit - gap0 * ratio**n
* ``set_real``    a_n = n-bit partial sum of 0.A(0)A(1)... for an infinite,
                  ultimately periodic set A (so the limit is exactly rational)
* ``staircase``   a_n = limit - G(n) for an explicit strictly decreasing gap
                  schedule G; a stand-in for reals whose gaps shrink on any
                  prescribed schedule (true hyperimmune-style reals have no
                  finite realization)
* ``omega_toy``   halting-mass accumulation of a finite prefix-free machine;
                  the one kind that attains its limit, at the stage the last
                  code halts (gap queries there raise).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .dyadic import real_from_set
from .errors import ConfigError, DegenerateApproximationError, DomainError
from .util import parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DeskReal:
    """A left-c.e. real as (approximation map, oracle limit, name)."""

    name: str
    approx: Callable[[int], Fraction]
    limit: Fraction
    # Stage at which the approximation attains the limit, if it ever does
    # (only omega_toy reals do); gap() raises from that stage on.
    attains_at: Optional[int] = None
    # Optional certified upper bound on limit - a_n, where a closed form exists.
    gap_bound: Optional[Callable[[int], Fraction]] = None

    def __repr__(self):
        return f"DeskReal({self.name!r}, limit={self.limit})"


def approx_at(x: DeskReal, n: int) -> Fraction:
    """The n-th approximation a_n; nondecreasing in n."""
    if n < 0:
        raise DomainError(f"approximation index must be >= 0, got {n}")
    return x.approx(n)


def gap(x: DeskReal, n: int) -> Fraction:
    """Exact remaining gap limit - a_n; must be strictly positive."""
    g = x.limit - approx_at(x, n)
    if g <= 0:
        raise DegenerateApproximationError(
            f"{x.name}: approximation reached or passed its limit at index {n}"
        )
    return g


def _cached(fn: Callable[[int], Fraction]) -> Callable[[int], Fraction]:
    """Memoize a pure int->Fraction map.

    Dict writes are idempotent here (fn is pure), so concurrent callers at
    worst recompute a value; they never observe a wrong one.
    """
    cache: dict[int, Fraction] = {}

    def wrapped(n: int) -> Fraction:
        value = cache.get(n)
        if value is None:
            value = cache[n] = fn(n)
        return value

    return wrapped


def geometric(
    limit: Fraction,
    ratio: Fraction = _HALF,
    gap0: Optional[Fraction] = None,
    name: Optional[str] = None,
) -> DeskReal:
    """a_n = limit - gap0 * ratio**n; the workhorse with closed-form gaps."""
    if not 0 < ratio < 1:
        raise ConfigError(f"geometric ratio must lie in (0,1), got {ratio}")
    g0 = limit if gap0 is None else gap0
    if g0 <= 0:
        raise ConfigError(f"geometric initial gap must be positive, got {g0}")

    def a(n: int) -> Fraction:
        return limit - g0 * ratio**n

    return DeskReal(
        name=name or f"geometric({limit})",
        approx=_cached(a),
        limit=limit,
        gap_bound=lambda n: g0 * ratio**n,
    )


def periodic_limit(prefix: str, period: str) -> Fraction:
    """Exact value of the binary expansion 0.prefix period period ...

    The period must contain a 1; otherwise the expansion terminates and the
    partial sums would attain the value.
    """
    if any(c not in "01" for c in prefix + period) or not period:
        raise ConfigError(f"bad periodic pattern ({prefix!r}, {period!r})")
    if "1" not in period:
        raise ConfigError("period must contain a 1 (terminating expansions attain)")
    m, p = len(prefix), len(period)
    head = Fraction(int(prefix, 2) if prefix else 0, 1 << m)
    tail = Fraction(int(period, 2), (1 << p) - 1) / (1 << m)
    return head + tail


def set_real(
    membership: Callable[[int], bool],
    limit: Fraction,
    name: str = "set_real",
) -> DeskReal:
    """Bitwise partial sums of 0.A(0)A(1)... for an infinite set A.

    The caller supplies the exact limit (closed form for periodic sets);
    partial sums stay strictly below it precisely because A is infinite.
    """
    return DeskReal(
        name=name,
        approx=_cached(lambda n: real_from_set(membership, n)),
        limit=limit,
        gap_bound=lambda n: Fraction(1, 1 << n),
    )


def staircase(
    limit: Fraction,
    gaps: Callable[[int], Fraction],
    name: str = "staircase",
    validate_through: int = 64,
) -> DeskReal:
    """a_n = limit - G(n) for a strictly decreasing positive gap schedule G.

    Validation samples the schedule through ``validate_through``; callables
    must keep decreasing beyond that on their own honor.
    """
    prev = None
    for n in range(validate_through + 1):
        g = gaps(n)
        if g <= 0:
            raise ConfigError(f"staircase gap G({n}) = {g} is not positive")
        if prev is not None and g >= prev:
            raise ConfigError(
                f"staircase schedule not strictly decreasing at {n}: {g} >= {prev}"
            )
        prev = g
    return DeskReal(
        name=name,
        approx=_cached(lambda n: limit - gaps(n)),
        limit=limit,
        gap_bound=gaps,
    )


def schedule_from_list(head: Sequence[Fraction], tail_ratio: Fraction) -> Callable[[int], Fraction]:
    """Gap schedule from explicit leading gaps, then geometric decay."""
    head = [Fraction(g) for g in head]
    if not head:
        raise ConfigError("staircase needs at least one explicit gap")
    if not 0 < tail_ratio < 1:
        raise ConfigError(f"staircase tail_ratio must lie in (0,1), got {tail_ratio}")

    def g(n: int) -> Fraction:
        if n < len(head):
            return head[n]
        return head[-1] * tail_ratio ** (n - len(head) + 1)

    return g


def omega_toy(machine, stages: Optional[dict[str, int]] = None, name: Optional[str] = None) -> DeskReal:
    """Halting-mass real of a finite prefix-free machine.

    a_s sums 2**-|code| over the codes that have halted by stage s; the final
    stage equals the machine's full Kraft mass, so the limit is attained there.
    Stage defaults to the code length (each code "runs" about as long as it is).
    """
    from .machines import measure  # local import; machines also imports dyadic

    codes = sorted(machine.table)
    stage_of = {}
    for code in codes:
        s = (stages or {}).get(code, max(len(code), 1))
        if s < 1:
            raise ConfigError(f"halting stage for code {code!r} must be >= 1, got {s}")
        stage_of[code] = s
    limit = measure(machine)
    last = max(stage_of.values(), default=0)

    def a(s: int) -> Fraction:
        total = _ZERO
        for code, st in stage_of.items():
            if st <= s:
                total += Fraction(1, 1 << len(code))
        return total

    return DeskReal(
        name=name or f"omega({machine.name})",
        approx=_cached(a),
        limit=limit,
        attains_at=last,
    )


def scale(x: DeskReal, r: Fraction) -> DeskReal:
    """The real r*x with the approximation scaled pointwise; r must be positive."""
    if r <= 0:
        raise ConfigError(f"scale factor must be positive, got {r}")
    return DeskReal(
        name=f"{r}*{x.name}",
        approx=lambda n: r * x.approx(n),
        limit=r * x.limit,
        attains_at=x.attains_at,
        gap_bound=(lambda n: r * x.gap_bound(n)) if x.gap_bound else None,
    )


# ---------------------------------------------------------------------------
# Gallery configuration


@dataclass(frozen=True)
class GalleryEntry:
    """One configured real: name, kind, and kind-specific parameters."""

    name: str
    kind: str
    parameters: dict = field(default_factory=dict)


# Membership patterns with exact rational limits (infinite, periodic digits).
_PERIODIC_SETS = {
    "evens": ("", "10"),
    "odds": ("", "01"),
    "naturals": ("", "1"),
}


def _build_entry(entry: GalleryEntry) -> DeskReal:
    kind, params = entry.kind, dict(entry.parameters)
    if kind == "geometric":
        return geometric(
            limit=parse_rational(params["limit"]),
            ratio=parse_rational(params.get("ratio", _HALF)),
            gap0=parse_rational(params["gap0"]) if "gap0" in params else None,
            name=entry.name,
        )
    if kind == "set_real":
        set_kind = params.get("set", "evens")
        if isinstance(set_kind, dict):
            set_kind = set_kind.get("kind")
        if set_kind not in _PERIODIC_SETS:
            raise ConfigError(
                f"set_real supports the infinite periodic sets {sorted(_PERIODIC_SETS)}; "
                f"got {set_kind!r} (aperiodic sets have irrational limits, finite sets "
                f"attain theirs)"
            )
        from .hyperimmunity import builtin_set

        prefix, period = _PERIODIC_SETS[set_kind]
        return set_real(
            builtin_set(set_kind).contains,
            periodic_limit(prefix, period),
            name=entry.name,
        )
    if kind == "staircase":
        gaps = schedule_from_list(
            [parse_rational(g) for g in params["gaps"]],
            parse_rational(params.get("tail_ratio", _HALF)),
        )
        return staircase(parse_rational(params["limit"]), gaps, name=entry.name)
    if kind == "omega_toy":
        from .machines import machine_from_dict

        machine = machine_from_dict(params["machine"])
        stages = {str(k): int(v) for k, v in params.get("stages", {}).items()}
        return omega_toy(machine, stages or None, name=entry.name)
    raise ConfigError(f"unknown gallery kind {kind!r}")


def build_gallery(entries: Sequence[GalleryEntry]) -> list[DeskReal]:
    """Build every entry, reporting the failing entry index on bad config."""
    reals = []
    for i, entry in enumerate(entries):
        try:
            reals.append(_build_entry(entry))
        except (ConfigError, KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"gallery entry {i} ({entry.name!r}): {e}") from e
    return reals


def gallery_from_config(config) -> list[DeskReal]:
    """Parse a JSON-shaped gallery document: a list of {name, kind, parameters}."""
    if not isinstance(config, list):
        raise ConfigError("gallery config must be a list of entries")
    entries = []
    for i, raw in enumerate(config):
        if not isinstance(raw, dict) or "kind" not in raw:
            raise ConfigError(f"gallery entry {i}: need an object with a kind")
        entries.append(
            GalleryEntry(
                name=str(raw.get("name", f"entry{i}")),
                kind=str(raw["kind"]),
                parameters=raw.get("parameters", {}),
            )
        )
    return build_gallery(entries)


def alternating_gaps(n: int) -> Fraction:
    """G(2k) = 4**-k, G(2k+1) = 4**-k / 3: ratio steps alternate 1/3 and 3/4."""
    k, odd = divmod(n, 2)
    base = Fraction(1, 1 << (2 * k))
    return base / 3 if odd else base


def default_gallery() -> list[DeskReal]:
    """One real of each kind, used by tests and as the CLI default."""
    from .machines import PrefixMachine

    three_code = PrefixMachine(
        name="three-code", table={"0": "1", "10": "10", "11": "101"}
    )
    return [
        geometric(_ONE, name="geometric1"),
        set_real(lambda i: i % 2 == 0, Fraction(2, 3), name="evens_real"),
        staircase(_ONE, alternating_gaps, name="staircase_alt"),
        omega_toy(three_code, {"0": 1, "10": 2, "11": 3}, name="omega3"),
    ]
