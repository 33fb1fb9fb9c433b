"""Extended-precision arithmetic contexts.

Every numerical operation in this package is parameterized by a
:class:`PrecisionContext` carrying an explicit decimal digit count.  A context
owns a private mpmath ``MPContext`` instance running at ``digits +
guard_digits`` decimal places, so parallel workers using different digit
counts never share mutable precision state.  Values produced under one
context are plain mpmath numbers and can be consumed by any other context
(mpmath numbers are exact binary rationals; precision only affects
operations).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath.ctx_mp import MPContext

__all__ = [
    "PrecisionContext",
    "context_create",
    "complex_pow",
    "near_equal",
    "PrecisionError",
    "PrecisionEscalationError",
]

MIN_DIGITS = 15
DEFAULT_GUARD_DIGITS = 10


class PrecisionError(ValueError):
    """Invalid precision request or unrecoverable precision loss."""


class PrecisionEscalationError(PrecisionError):
    """Raised when repeated precision escalation failed to resolve a computation."""


def _make_mp(dps: int) -> MPContext:
    ctx = MPContext()
    ctx.dps = dps
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision of ``digits`` significant decimal digits.

    ``eps = 10^(1-digits)`` is the comparison tolerance; all transcendental
    calls run with ``guard_digits`` extra decimal places of internal slack.
    Instances are immutable and freely shareable.
    """

    digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS
    _mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if int(self.digits) != self.digits or self.digits < MIN_DIGITS:
            raise PrecisionError(
                f"digits must be an integer >= {MIN_DIGITS}, got {self.digits!r}"
            )
        if self.guard_digits < 5:
            raise PrecisionError(f"guard_digits must be >= 5, got {self.guard_digits!r}")
        object.__setattr__(self, "_mp", _make_mp(self.digits + self.guard_digits))

    @property
    def mp(self) -> MPContext:
        """The underlying mpmath context (dps = digits + guard_digits)."""
        return self._mp

    @property
    def eps(self):
        """Comparison tolerance 10^(1-digits), exact by construction."""
        return self._mp.mpf(10) ** (1 - self.digits)

    def mpf(self, x):
        return self._mp.mpf(x)

    def mpc(self, re, im=0):
        return self._mp.mpc(re, im)

    def with_digits(self, digits: int) -> "PrecisionContext":
        """A sibling context at a different digit count (same guard)."""
        return PrecisionContext(digits, self.guard_digits)

    def doubled(self) -> "PrecisionContext":
        return self.with_digits(2 * self.digits)

    def nstr(self, x, n: int | None = None) -> str:
        """Render ``x`` with ``n`` (default: ``digits``) significant figures."""
        return self._mp.nstr(x, n if n is not None else self.digits)


def context_create(digits: int) -> PrecisionContext:
    """Create a context with ``eps = 10^(1-digits)`` and 10 guard digits.

    Rejects ``digits < 15`` (below any precision this package is meant for).
    """
    return PrecisionContext(digits)


def complex_pow(a, s, ctx: PrecisionContext):
    """``a**s = exp(s*ln a)`` for real ``a > 0`` with the principal real log."""
    mp = ctx.mp
    a = mp.mpf(a)
    if not (a > 0):
        raise ValueError(f"complex_pow base must be a positive real, got {a}")
    return mp.exp(mp.mpc(s) * mp.ln(a))


def _mantissa_bits(x) -> int:
    vals = []
    for part in (getattr(x, "real", x), getattr(x, "imag", 0)):
        t = getattr(part, "_mpf_", None)
        if t is not None:
            vals.append(t[3])
    return max(vals, default=53)


def near_equal(x, y, tol) -> bool:
    """True iff |x-y| <= tol*max(1, |x|, |y|).

    The comparison runs at a precision wide enough for the operands, so the
    verdict is not limited by any ambient mpmath precision.
    """
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    bits = max(_mantissa_bits(x), _mantissa_bits(y)) + 30
    mp = _make_mp(max(30, int(bits * 0.30103) + 10))
    xc, yc = mp.mpc(x), mp.mpc(y)
    return abs(xc - yc) <= mp.mpf(tol) * max(mp.mpf(1), abs(xc), abs(yc))
