"""Expected irregularity of the random graph ``G(n, 1/2)``.

Given that ``uv`` is an edge, ``deg u - 1`` and ``deg v - 1`` are independent
``Bin(n - 2, 1/2)`` variables, so by linearity

    E[irr] = C(n, 2) * (1/2) * E|X' - Y'|,   X', Y' ~ Bin(n - 2, 1/2),

exactly.  Treating the degrees as unconditioned ``Bin(n - 1, 1/2)`` gives
the same leading term ``n^(5/2) / (4 sqrt(pi))``; both forms are computed
so the gap can be inspected.

Sampling uses numpy's PCG64 with one ``SeedSequence`` child per trial, so a
trial's graph depends only on ``(seed, trial index)`` and trials can run in
any order or in parallel.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .graph_core import Graph


def _generator(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def _upper_mask(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Boolean adjacency matrix of one ``G(n, p)`` draw, one uniform per pair."""
    iu = np.triu_indices(n, 1)
    a = np.zeros((n, n), dtype=bool)
    a[iu] = rng.random(len(iu[0])) < p
    return a | a.T


def sample_gnp(n: int, p: float, seed: int | np.random.SeedSequence = 0) -> Graph:
    """Erdős–Rényi graph: each of the ``C(n, 2)`` pairs is an edge with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be non-negative")
    a = _upper_mask(n, p, _generator(seed))
    us, vs = np.nonzero(np.triu(a, 1))
    return Graph(n, [(int(u), int(v)) for u, v in zip(us, vs)])


def abs_diff_binomial_expectation(m: int) -> Fraction:
    """``E|X - Y|`` for independent ``X, Y ~ Bin(m, 1/2)``, namely ``(m+1) C(2m, m+1) / 4^m``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return Fraction((m + 1) * comb(2 * m, m + 1), 4 ** m)


def abs_diff_binomial_brute(m: int) -> Fraction:
    """The same expectation summed over the joint distribution."""
    return Fraction(sum(abs(a - b) * comb(m, a) * comb(m, b) for a in range(m + 1) for b in range(m + 1)), 4 ** m)


def expected_irr(n: int) -> Fraction:
    """Exact ``E[irr(G(n, 1/2))]`` from the edge-conditioned degree law."""
    if n < 2:
        return Fraction(0)
    return comb(n, 2) * Fraction(1, 2) * abs_diff_binomial_expectation(n - 2)


def expected_irr_unconditioned(n: int) -> Fraction:
    """The same sum with degrees taken as unconditioned ``Bin(n - 1, 1/2)``."""
    if n < 2:
        return Fraction(0)
    return comb(n, 2) * Fraction(1, 2) * abs_diff_binomial_expectation(n - 1)


def exact_expected_irr(n: int) -> Fraction:
    """``E[irr(G(n, 1/2))]`` by summing over all ``2^C(n,2)`` labeled graphs (``n <= 5``)."""
    if n > 5:
        raise ValueError("brute-force enumeration is limited to n <= 5")
    pairs = list(itertools.combinations(range(n), 2))
    total = 0
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        chosen = [e for i, e in enumerate(pairs) if mask >> i & 1]
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        total += sum(abs(deg[u] - deg[v]) for u, v in chosen)
    return Fraction(total, 1 << len(pairs))


def leading_term(n: int) -> float:
    """``n^(5/2) / (4 sqrt(pi))``."""
    return n ** 2.5 / (4 * math.sqrt(math.pi))


def form_gap(n: int) -> dict[str, object]:
    """Edge-conditioned versus unconditioned expectation at order ``n``."""
    cond, uncond = expected_irr(n), expected_irr_unconditioned(n)
    return {
        "n": n,
        "conditioned": cond,
        "unconditioned": uncond,
        "gap": uncond - cond,
        "relative_gap": float((uncond - cond) / cond) if cond else 0.0,
    }


def _irr_of_draw(n: int, p: float, ss: np.random.SeedSequence) -> int:
    a = _upper_mask(n, p, _generator(ss))
    deg = a.sum(axis=1)
    us, vs = np.nonzero(np.triu(a, 1))
    return int(np.abs(deg[us] - deg[vs]).sum())


@dataclass
class RandomExperiment:
    n: int
    p: float
    trials: int
    seed: int
    values: list[int] = field(repr=False)

    @property
    def mean(self) -> float:
        return math.fsum(self.values) / self.trials

    @property
    def stderr(self) -> float:
        if self.trials < 2:
            return float("nan")
        mu = self.mean
        var = math.fsum((x - mu) ** 2 for x in self.values) / (self.trials - 1)
        return math.sqrt(var / self.trials)

    @property
    def ratio(self) -> float:
        return self.mean / leading_term(self.n)

    def to_dict(self) -> dict[str, object]:
        exact = expected_irr(self.n) if self.p == 0.5 else None
        return {
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "mean": self.mean,
            "stderr": self.stderr,
            "leading_term": leading_term(self.n),
            "ratio": self.ratio,
            "exact_mean": None if exact is None else float(exact),
            "exact_ratio": None if exact is None else float(exact) / leading_term(self.n),
        }


def monte_carlo_irr(n: int, trials: int, seed: int = 0, p: float = 0.5, threads: int = 1) -> RandomExperiment:
    """Sample mean of ``irr(G(n, p))`` over ``trials`` independent draws.

    Trial ``i`` uses child ``i`` of ``SeedSequence(seed)``, so the result does
    not depend on ``threads``.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    children = np.random.SeedSequence(seed).spawn(trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(lambda ss: _irr_of_draw(n, p, ss), children))
    else:
        values = [_irr_of_draw(n, p, ss) for ss in children]
    return RandomExperiment(n, p, trials, seed, values)
