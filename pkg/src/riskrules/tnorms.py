"""T-norm conjunction operators on the closed unit interval.

Three canonical operators plus a log-space product variant:

* ``lukasiewicz`` -- max(0, a + b - 1); strong conjunction, jointly weak
  conditions drag the result to zero.
* ``product``     -- a * b; smooth multiplicative conjunction.
* ``goedel``      -- min(a, b); bottleneck conjunction, the weakest
  condition alone decides.
* ``logproduct``  -- decision-equivalent to ``product``; the genuinely
  log-space accumulation lives in :func:`fold_chain_log` and stays finite
  on chains long enough to underflow a direct product.

Chains fold left-associated, which fixes the floating-point bit pattern
of every result. All functions here are pure and safe to call from any
number of concurrent workers. These are inference-time combinators only;
nothing is differentiable or trainable.

The backend is a compiled extension when it was built at install time,
with a bit-identical pure-Python fallback otherwise; ``BACKEND`` names
the active one.
"""

from __future__ import annotations

import enum
from typing import Sequence

try:
    from riskrules import _kernels as _impl
    BACKEND = "compiled"
except ImportError:  # extension not built; the pure twin is bit-identical
    from riskrules import _pykernels as _impl
    BACKEND = "pure-python"

LOG_ZERO = float("-inf")


class TNormKind(enum.Enum):
    """Selectable conjunction operators. Values are the config/CLI names."""

    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"
    GOEDEL = "goedel"
    LOGPRODUCT = "logproduct"

    @property
    def code(self) -> int:
        return _CODES[self]

    @classmethod
    def from_name(cls, name: str) -> "TNormKind":
        try:
            return cls(name)
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown t-norm {name!r}; expected one of: {names}") from None


_CODES = {
    TNormKind.LUKASIEWICZ: _impl.LUKASIEWICZ,
    TNormKind.PRODUCT: _impl.PRODUCT,
    TNormKind.GOEDEL: _impl.GOEDEL,
    TNormKind.LOGPRODUCT: _impl.LOGPRODUCT,
}

#: The three operators compared in benchmark runs (logproduct is a
#: numerical alias of product, not a fourth behaviour).
CANONICAL_KINDS = (TNormKind.LUKASIEWICZ, TNormKind.PRODUCT, TNormKind.GOEDEL)


def unit_score(value: float, label: str = "score") -> float:
    """Validate a confidence value and return it as a float in [0, 1].

    Raises ValueError for non-finite values or anything outside the
    closed interval. All scores enter the system through this check
    (rule files, dataset files, CLI arguments); the operators below then
    assume validated inputs.
    """
    v = float(value)
    if not 0.0 <= v <= 1.0:  # also rejects NaN, which fails every comparison
        raise ValueError(f"{label} must be a finite number in [0, 1], got {value!r}")
    return v


def apply(kind: TNormKind, a: float, b: float) -> float:
    """Combine two unit-interval scores with the selected t-norm.

    ``logproduct`` returns exactly the same value as ``product``. Inputs
    are assumed validated (see :func:`unit_score`).
    """
    return _impl.tnorm_apply(kind.code, a, b)


def fold_chain(kind: TNormKind, scores: Sequence[float]) -> float:
    """Left-associated t-norm fold over a non-empty score chain.

    A single-element chain returns that element unchanged. An empty
    chain is rejected: a rule with no conditions has no meaning.
    """
    if not scores:
        raise ValueError("empty condition chain")
    if type(scores) is not list:
        scores = list(scores)
    return _impl.tnorm_fold(kind.code, scores)


def fold_chain_log(scores: Sequence[float]) -> float:
    """Product chain accumulated in log space: the sum of natural logs.

    Returns :data:`LOG_ZERO` when any factor is exactly zero; exp() of
    the result matches ``fold_chain(PRODUCT, scores)`` up to rounding,
    while staying finite for long chains of strictly positive scores
    whose direct product would underflow.
    """
    if not scores:
        raise ValueError("empty condition chain")
    if type(scores) is not list:
        scores = list(scores)
    return _impl.tnorm_fold_log(scores)
