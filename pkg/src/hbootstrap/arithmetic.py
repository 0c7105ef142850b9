"""Subsets of Z_p free of non-trivial bounded-coefficient relations.

A set A is *solution free* at bound c when every solution of
``alpha_1 a_1 + alpha_2 a_2 + alpha_3 a_3 = 0 (mod p)`` with ``a_i`` in A
(repetition allowed) and ``|alpha_i| <= c`` has ``sum(alpha) = 0`` and all
``a_i`` carrying a non-zero coefficient equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class DilationSet:
    p: int
    elements: tuple[int, ...]
    coeff_bound: int = 4
    verified: bool = False

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", els)
        if any(not 0 < a < self.p for a in els):
            raise ValueError(f"elements must lie in 1..{self.p - 1}")

    def __len__(self):
        return len(self.elements)

    def to_text(self) -> str:
        return "\n".join([f"{self.p} {self.coeff_bound}"] + [str(a) for a in self.elements]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DilationSet":
        lines = [l for l in text.split("\n") if l.strip()]
        p, c = (int(x) for x in lines[0].split())
        s = cls(p, tuple(int(l) for l in lines[1:]), c)
        return verified(s)


def _is_violation(p: int, alpha, a) -> bool:
    if sum(x * y for x, y in zip(alpha, a)) % p:
        return False
    support = {y for x, y in zip(alpha, a) if x}
    return not (sum(alpha) == 0 and len(support) <= 1)


def is_violation(s: DilationSet, alpha, a) -> bool:
    """Does ``(alpha, a)`` solve the relation without being trivial?"""
    if any(abs(x) > s.coeff_bound for x in alpha) or any(y not in s.elements for y, x in zip(a, alpha) if x):
        return False
    return _is_violation(s.p, alpha, a)


def _coefficients(c: int):
    """Coefficients ordered c, c-1, ..., -c (largest first)."""
    return list(range(c, -c - 1, -1))


def find_violation(p: int, elements, c: int):
    """First violating ``(alpha, a)`` or None.

    Search order: relations between two distinct elements first, then
    relations in a single element, then three-slot relations; coefficients
    run from ``c`` down to ``-c``.  Zero-coefficient slots report ``None``.
    """
    A = sorted(set(elements))
    if not A:
        return None
    coeffs = _coefficients(c)
    # two distinct elements
    for x, y in itertools.combinations(A, 2):
        for a1 in coeffs:
            for a2 in coeffs:
                if a1 and a2 and (a1 * x + a2 * y) % p == 0:
                    return (a1, a2, 0), (x, y, None)
    # one element: sum(alpha) * x = 0 with sum(alpha) != 0
    for x in A:
        for s in range(3 * c, 0, -1):
            if (s * x) % p == 0:
                alpha = _split_sum(s, c)
                return alpha, tuple(x if t else None for t in alpha)
    # general three-slot search, vectorised over (a1, a2)
    arr = np.array(A, dtype=np.int64)
    member = np.zeros(p, dtype=bool)
    member[arr] = True
    X, Y = np.meshgrid(arr, arr, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    for a1 in coeffs:
        for a2 in coeffs:
            for a3 in coeffs:
                if a3 == 0:
                    continue
                inv = pow(a3, -1, p)
                z = (-(a1 * X + a2 * Y) * inv) % p
                hit = np.nonzero(member[z])[0]
                for h in hit:
                    a = (int(X[h]), int(Y[h]), int(z[h]))
                    if _is_violation(p, (a1, a2, a3), a):
                        return (a1, a2, a3), tuple(v if t else None for v, t in zip(a, (a1, a2, a3)))
    return None


def _split_sum(s: int, c: int) -> tuple[int, int, int]:
    out = []
    for _ in range(3):
        t = min(c, s)
        out.append(t)
        s -= t
    return tuple(out)


def verify_solution_free(s: DilationSet):
    """``(True, None)`` or ``(False, (alpha, a))`` by exhaustive search."""
    w = find_violation(s.p, s.elements, s.coeff_bound)
    return (w is None), w


def verified(s: DilationSet) -> DilationSet:
    ok, _ = verify_solution_free(s)
    return DilationSet(s.p, s.elements, s.coeff_bound, ok)


def _compatible_with(p: int, base: list[int], x: int, c: int) -> bool:
    """Is ``base + [x]`` solution free, given ``base`` is?  Checks only relations using x."""
    coeffs = _coefficients(c)
    S = base + [x]
    arr = np.array(S, dtype=np.int64)
    member = np.zeros(p, dtype=bool)
    member[arr] = True
    for a1 in coeffs:
        if a1 == 0:
            continue
        for a2 in coeffs:
            part = (a1 * x + a2 * arr) % p
            for a3 in coeffs:
                if a3 == 0:
                    for h in np.nonzero(part == 0)[0]:
                        if _is_violation(p, (a1, a2, 0), (x, int(arr[h]), x)):
                            return False
                    continue
                inv = pow(a3, -1, p)
                z = (-part * inv) % p
                for h in np.nonzero(member[z])[0]:
                    if _is_violation(p, (a1, a2, a3), (x, int(arr[h]), int(z[h]))):
                        return False
    return True


def exhaustive_best_set(p: int, c: int = 4) -> DilationSet:
    """A maximum solution-free subset of Z_p minus 0; lexicographically least among maxima."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    singles = [a for a in range(1, p) if find_violation(p, [a], c) is None]
    pair_ok = {a: set() for a in singles}
    for a, b in itertools.combinations(singles, 2):
        if find_violation(p, [a, b], c) is None:
            pair_ok[a].add(b)
            pair_ok[b].add(a)
    best: list[int] = []

    def rec(chosen: list[int], cands: list[int]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for i, x in enumerate(cands):
            rest = [y for y in cands[i + 1 :] if y in pair_ok[x]]
            if len(chosen) + 1 + len(rest) <= len(best):
                continue
            if len(chosen) >= 2 and not _compatible_with(p, chosen, x, c):
                continue
            rec(chosen + [x], rest)

    rec([], singles)
    return verified(DilationSet(p, tuple(best), c))


def behrend_sphere_set(p: int, c: int = 4, max_dim: int = 6) -> DilationSet:
    """Sphere-layer digit construction, then greedy filtering to a verified set.

    Numbers whose base-``b`` digits are below ``b / (3c)`` admit no carries in
    a relation with three coefficients bounded by ``c``; among them those with
    a common digit-square sum (one sphere layer) avoid the relations a
    strictly convex layer forbids.  The (base, dimension) pair maximising the
    post-filter size is kept; the final set is checked exhaustively.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    best: list[int] = []
    for dim in range(1, max_dim + 1):
        for base in range(3 * c + 1, p + 1):
            if base ** dim > p:
                break
            top = -(-base // (3 * c))  # digits 0..top-1
            layers: dict[int, list[int]] = {}
            for digits in itertools.product(range(top), repeat=dim):
                x = sum(d * base**i for i, d in enumerate(digits))
                if 0 < x < p:
                    layers.setdefault(sum(d * d for d in digits), []).append(x)
            if not layers:
                continue
            layer = max(layers.values(), key=len)
            if len(layer) <= len(best):
                continue
            chosen: list[int] = []
            for x in sorted(layer):
                if find_violation(p, [x], c) is None and _compatible_with(p, chosen, x, c):
                    chosen.append(x)
            if len(chosen) > len(best):
                best = chosen
    if not best:
        raise ValueError(f"sphere construction is empty after filtering for p={p}; use exhaustive_best_set")
    s = verified(DilationSet(p, tuple(best), c))
    if not s.verified:
        raise AssertionError("filtered sphere set failed verification")
    return s
