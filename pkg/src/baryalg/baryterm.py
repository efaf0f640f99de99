"""Weights, convex combinations and binary weighted-mean terms.

A term is a binary tree: leaves name generators ``v1, v2, ...`` and every
internal node carries a weight ``p`` in the open unit interval, meaning the
weighted mean ``(1 - p) * left + p * right``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import (
    LeafIndexOutOfRange,
    NotAConvexCombination,
    UnboundGenerator,
    WeightOutOfRange,
    ZeroCoefficient,
)

POU_TOL = 1e-12
RENORMALIZE_TOL = 1e-9


def check_weight(p) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise WeightOutOfRange(p)
    return p


def complement(p: float) -> float:
    return check_weight(1.0 - check_weight(p))


def dual_mul(p: float, r: float) -> float:
    """``p + r - p*r``, i.e. the complement of the product of complements."""
    p, r = check_weight(p), check_weight(r)
    return check_weight(p + r - p * r)


def weighted_mean(p: float, u, v):
    """``(1 - p) * u + p * v``; works for scalars and arrays alike."""
    p = check_weight(p)
    return (1.0 - p) * np.asarray(u, dtype=float) + p * np.asarray(v, dtype=float)


class ConvexCombination:
    """Coefficient vector on the standard simplex.

    Input whose sum is within ``tol`` of 1 is renormalised, and entries in
    ``[-tol, 0)`` are clipped to zero first; anything further off is rejected.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients, tol: float = RENORMALIZE_TOL):
        c = np.array(coefficients, dtype=float).reshape(-1)
        if c.size == 0:
            raise NotAConvexCombination("a convex combination needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NotAConvexCombination(f"non-finite coefficient in {c.tolist()}")
        if c.min() < -tol:
            raise NotAConvexCombination(f"negative coefficient {c.min():.3e}")
        c = np.clip(c, 0.0, None)
        s = c.sum()
        if abs(s - 1.0) > tol:
            raise NotAConvexCombination(f"coefficients sum to {s!r}, not 1")
        if s != 1.0:
            c = c / s
        c.setflags(write=False)
        self._coeffs = c

    @property
    def coefficients(self) -> np.ndarray:
        return self._coeffs

    def __array__(self, dtype=None, copy=None):
        return self._coeffs if dtype is None else self._coeffs.astype(dtype)

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, i):
        return self._coeffs[i]

    def __iter__(self):
        return iter(self._coeffs.tolist())

    def tolist(self) -> list[float]:
        return self._coeffs.tolist()

    def __repr__(self):
        return f"ConvexCombination({self._coeffs.tolist()})"

    def combine(self, points):
        """``sum_i c_i * points[i]``."""
        return self._coeffs @ np.asarray(points, dtype=float)


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, (int, np.integer)) or self.index < 1:
            raise ValueError(f"generator index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True)
class Node:
    weight: float
    left: "BaryTerm"
    right: "BaryTerm"

    def __post_init__(self):
        object.__setattr__(self, "weight", check_weight(self.weight))


BaryTerm = Union[Leaf, Node]


def leaves(t: BaryTerm) -> list[int]:
    out, stack = [], [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node.index)
        else:
            stack.extend((node.right, node.left))
    return out


def depth(t: BaryTerm) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


def eval_term(t: BaryTerm, assignment: Mapping[int, object] | Sequence):
    """Evaluate ``t`` in the vector-space model.

    ``assignment`` maps 1-based generator indices to points; a plain sequence
    is read as ``v1, v2, ...`` in order.
    """
    if not isinstance(assignment, Mapping):
        assignment = {i + 1: v for i, v in enumerate(assignment)}
    if isinstance(t, Leaf):
        if t.index not in assignment:
            raise UnboundGenerator(t.index)
        return np.asarray(assignment[t.index], dtype=float)
    return weighted_mean(t.weight, eval_term(t.left, assignment), eval_term(t.right, assignment))


def _coeffs(t: BaryTerm, arity: int) -> np.ndarray:
    if isinstance(t, Leaf):
        if t.index > arity:
            raise LeafIndexOutOfRange(f"leaf v{t.index} exceeds arity {arity}")
        e = np.zeros(arity)
        e[t.index - 1] = 1.0
        return e
    p = t.weight
    return (1.0 - p) * _coeffs(t.left, arity) + p * _coeffs(t.right, arity)


def flatten(t: BaryTerm, arity: int) -> ConvexCombination:
    """Coefficients ``a`` with ``eval_term(t, A) == sum_i a_i A(v_i)`` for every ``A``.

    Repeated leaves accumulate.
    """
    return ConvexCombination(_coeffs(t, arity))


def left_comb(weights: Sequence[float], indices: Sequence[int] | None = None) -> BaryTerm:
    """``p_{r-1}( ... p_2(p_1(v1, v2), v3) ..., v_r)`` for ``r = len(weights) + 1``."""
    if indices is None:
        indices = range(1, len(weights) + 2)
    indices = list(indices)
    if len(indices) != len(weights) + 1:
        raise ValueError("a left comb over r leaves needs r - 1 weights")
    t: BaryTerm = Leaf(indices[0])
    for p, i in zip(weights, indices[1:]):
        t = Node(p, t, Leaf(i))
    return t


def comb_weights(t: BaryTerm) -> list[float]:
    """Weights ``p_1 .. p_{r-1}`` of a left comb, innermost first."""
    out = []
    while isinstance(t, Node):
        if not isinstance(t.right, Leaf):
            raise ValueError("term is not a left comb")
        out.append(t.weight)
        t = t.left
    return out[::-1]


def comb_closed_form(weights: Sequence[float]) -> np.ndarray:
    """Coefficients of a left comb from the product formulas.

    ``alpha_1 = prod_k (1 - p_k)``, ``alpha_i = p_{i-1} prod_{k >= i} (1 - p_k)``,
    ``alpha_r = p_{r-1}``.
    """
    p = np.asarray(weights, dtype=float)
    r = len(p) + 1
    q = 1.0 - p
    alpha = np.empty(r)
    alpha[0] = np.prod(q)
    for i in range(2, r):
        alpha[i - 1] = p[i - 2] * np.prod(q[i - 1:])
    if r > 1:
        alpha[r - 1] = p[r - 2]
    return alpha


def comb_from_combination(cc, indices: Sequence[int] | None = None) -> BaryTerm:
    """Left comb whose flattening is ``cc``.

    Weight ``p_i = alpha_{i+1} / (alpha_1 + ... + alpha_{i+1})``. Every
    coefficient must be strictly positive: strip zeros first and pass the
    surviving 1-based generator indices as ``indices``. A single coefficient
    gives a bare leaf.
    """
    alpha = np.asarray(cc, dtype=float).reshape(-1)
    if alpha.size == 0:
        raise NotAConvexCombination("empty combination")
    nonpos = np.flatnonzero(alpha <= 0.0)
    if nonpos.size:
        raise ZeroCoefficient(f"coefficient {int(nonpos[0]) + 1} is {alpha[nonpos[0]]!r}")
    partial = np.cumsum(alpha)
    weights = [alpha[i + 1] / partial[i + 1] for i in range(alpha.size - 1)]
    return left_comb(weights, indices)


# -- axioms ----------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    idempotence: bool
    skew_commutativity: bool
    skew_associativity: bool
    idempotence_violation: float
    skew_commutativity_violation: float
    skew_associativity_violation: float

    @property
    def all_passed(self) -> bool:
        return self.idempotence and self.skew_commutativity and self.skew_associativity


def _dist(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)), initial=0.0))


def check_axioms(p, r, a, b, c, tol: float = 1e-10) -> AxiomReport:
    """Evaluate idempotence, skew-commutativity and skew-associativity.

    Skew-associativity is ``p(r(a, b), c) == (r o p)(a, (p / (r o p))(b, c))``
    with ``o`` the dual multiplication.
    """
    p, r = check_weight(p), check_weight(r)
    idem = _dist(weighted_mean(p, a, a), a)
    comm = _dist(weighted_mean(p, a, b), weighted_mean(complement(p), b, a))
    rp = dual_mul(r, p)
    inner = p / rp
    assert 0.0 < inner < 1.0, (p, r, inner)
    lhs = weighted_mean(p, weighted_mean(r, a, b), c)
    rhs = weighted_mean(rp, a, weighted_mean(inner, b, c))
    assoc = _dist(lhs, rhs)
    return AxiomReport(idem <= tol, comm <= tol, assoc <= tol, idem, comm, assoc)


# -- random terms (test and demo support) ------------------------------------

def random_term(rng: np.random.Generator, max_depth: int, arity: int,
                leaf_prob: float = 0.3, weight_range=(1e-6, 1 - 1e-6)) -> BaryTerm:
    """Random term of depth at most ``max_depth`` over ``v1 .. v_arity``."""
    if max_depth == 0 or rng.random() < leaf_prob:
        return Leaf(int(rng.integers(1, arity + 1)))
    p = float(rng.uniform(*weight_range))
    return Node(p, random_term(rng, max_depth - 1, arity, leaf_prob, weight_range),
                random_term(rng, max_depth - 1, arity, leaf_prob, weight_range))
