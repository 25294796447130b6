"""Spectral radius, Perron vectors, closed-form bounds, and weight classes.

The eigensolver is power iteration on A + I, which is primitive on every
connected component (the identity shift breaks the period-2 obstruction
on bipartite graphs), started from the all-ones vector so the overlap
with the nonnegative Perron direction is guaranteed.  Disconnected
graphs are solved per component and the maximum component wins; Perron
entries off the winning component are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ParameterError
from .graphs import Graph, bits

__all__ = [
    "Constants",
    "RayleighCertificate",
    "SpectralResult",
    "WeightClassification",
    "adjacency_matrix",
    "choose_constants",
    "classify_vertices",
    "lambda_bounds",
    "rayleigh_certificate",
    "s_nk_lambda_closed_form",
    "spectral_radius",
]

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 10**6


@dataclass
class SpectralResult:
    """Dominant eigenpair of the adjacency matrix.

    ``perron`` is normalized to maximum entry exactly 1; ``residual`` is
    the infinity norm of A v - lambda v at termination.
    """

    lam: float
    perron: np.ndarray
    argmax_vertex: int
    residual: float
    iterations: int


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u in range(g.n):
        for v in bits(g.rows[u]):
            a[u, v] = 1.0
    return a


def _power_component(a: np.ndarray, tol: float, max_iters: int) -> tuple[float, np.ndarray, float, int]:
    nc = a.shape[0]
    v = np.ones(nc)
    lam = 0.0
    res = math.inf
    for it in range(1, max_iters + 1):
        w = a @ v
        lam = float(v @ w) / float(v @ v)
        res = float(np.max(np.abs(w - lam * v)))
        if res <= tol:
            return lam, v, res, it
        v = w + v  # one (A + I) step
        v /= v.max()
    raise ConvergenceError(
        f"power iteration did not reach residual {tol} in {max_iters} iterations",
        best_lambda=lam,
        residual=res,
        iterations=max_iters,
        best_vector=v / v.max(),
    )


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iters: int = MAX_ITERATIONS) -> SpectralResult:
    """Spectral radius and Perron vector of ``g``'s adjacency matrix."""
    if g.n < 1:
        raise ParameterError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ParameterError(f"tolerance must be positive, got {tol}")
    best: tuple[float, list[int], np.ndarray, float, int] | None = None
    for comp in g.components():
        verts = list(bits(comp))
        if len(verts) == 1:
            lam, vec, res, its = 0.0, np.ones(1), 0.0, 0
        else:
            index = {v: i for i, v in enumerate(verts)}
            a = np.zeros((len(verts), len(verts)))
            for v in verts:
                iv = index[v]
                for w in bits(g.rows[v]):
                    a[iv, index[w]] = 1.0
            lam, vec, res, its = _power_component(a, tol, max_iters)
        if best is None or lam > best[0]:
            best = (lam, verts, vec, res, its)
    assert best is not None
    lam, verts, vec, res, its = best
    perron = np.zeros(g.n)
    perron[verts] = vec / vec.max()
    return SpectralResult(
        lam=lam,
        perron=perron,
        argmax_vertex=int(np.argmax(perron)),
        residual=res,
        iterations=its,
    )


def s_nk_lambda_closed_form(n: int, k: int) -> float:
    """Spectral radius of the k-clique joined with n-k isolated vertices."""
    if not n > k >= 1:
        raise ParameterError(f"closed form needs n > k >= 1, got (n={n}, k={k})")
    return (k - 1 + math.sqrt((k - 1) ** 2 + 4 * k * (n - k))) / 2


def lambda_bounds(n: int, k: int) -> tuple[float, float]:
    """(lower, upper) bounds for the maximum spectral radius over
    C_{2k+2}-free graphs on n vertices."""
    if not n > k >= 2:
        raise ParameterError(f"lambda bounds need n > k >= 2, got (n={n}, k={k})")
    return s_nk_lambda_closed_form(n, k), math.sqrt(2 * k * (n - 1))


@dataclass(frozen=True)
class RayleighCertificate:
    """Two certified lower bounds for the spectral radius."""

    entrywise: float  # min over supported u of (A y)_u / y_u
    rayleigh_quotient: float  # y' A y / y' y


def rayleigh_certificate(g: Graph, y) -> RayleighCertificate:
    """Certified lower bounds on lambda(g) from a nonnegative test vector.

    If A y >= c y entrywise for nonnegative nonzero y, then lambda >= c;
    the entrywise bound is the largest such c for this y.
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (g.n,):
        raise ParameterError(f"test vector must have length {g.n}, got shape {y.shape}")
    if np.any(y < 0):
        raise ParameterError("test vector must be nonnegative")
    if not np.any(y > 0):
        raise ParameterError("test vector must not be all zero")
    ay = adjacency_matrix(g) @ y
    support = y > 0
    entrywise = float(np.min(ay[support] / y[support]))
    quotient = float(y @ ay) / float(y @ y)
    return RayleighCertificate(entrywise=entrywise, rayleigh_quotient=quotient)


@dataclass(frozen=True)
class Constants:
    """Threshold constants for the Perron-weight vertex classes.

    The admissible ranges (checked on construction):
      eta     < min{1/(k+1), 1 - 1/(16 k^3), 1/4 - 1/(16 k^2)}
      epsilon < min{1/(16 k^3), eta/2, eta/(32 k^3 + 2)}
      alpha   < epsilon^2 / (10 k)
      delta   = epsilon (alpha / 20k)^2 / (k+1)
    """

    k: int
    eta: float
    epsilon: float
    alpha: float
    delta: float

    def __post_init__(self):
        k = self.k
        if k < 2:
            raise ParameterError(f"constants need k >= 2, got {k}")
        if not 0 < self.eta < _eta_bound(k):
            raise ParameterError(f"eta={self.eta} outside (0, {_eta_bound(k)})")
        if not 0 < self.epsilon < _epsilon_bound(k, self.eta):
            raise ParameterError(f"epsilon={self.epsilon} outside (0, {_epsilon_bound(k, self.eta)})")
        if not 0 < self.alpha < self.epsilon**2 / (10 * k):
            raise ParameterError(f"alpha={self.alpha} outside (0, {self.epsilon**2 / (10 * k)})")
        want = self.epsilon * (self.alpha / (20 * k)) ** 2 / (k + 1)
        if not math.isclose(self.delta, want, rel_tol=1e-12):
            raise ParameterError(f"delta={self.delta} does not match its defining formula {want}")


def _eta_bound(k: int) -> float:
    return min(1 / (k + 1), 1 - 1 / (16 * k**3), 1 / 4 - 1 / (16 * k**2))


def _epsilon_bound(k: int, eta: float) -> float:
    return min(1 / (16 * k**3), eta / 2, eta / (32 * k**3 + 2))


def choose_constants(k: int) -> Constants:
    """Constants at one half of each admissible upper bound, left to right."""
    if k < 2:
        raise ParameterError(f"constants need k >= 2, got {k}")
    eta = _eta_bound(k) / 2
    epsilon = _epsilon_bound(k, eta) / 2
    alpha = epsilon**2 / (10 * k) / 2
    delta = epsilon * (alpha / (20 * k)) ** 2 / (k + 1)
    return Constants(k=k, eta=eta, epsilon=epsilon, alpha=alpha, delta=delta)


@dataclass(frozen=True)
class WeightClassification:
    """Vertex classes by Perron weight, plus the exceptional split.

    L  = weight > alpha, S = its complement, M = weight >= alpha/3,
    Lprime = weight >= eta.  E holds the vertices outside Lprime missing
    at least one neighbor in Lprime; R is everything else outside
    Lprime.  ``layers[i]``, when a root was given, is the triple
    (L_i, S_i, M_i) of class intersections with the distance-i layer.
    """

    constants: Constants
    L: frozenset[int]
    S: frozenset[int]
    M: frozenset[int]
    Lprime: frozenset[int]
    E: frozenset[int]
    R: frozenset[int]
    root: int | None = None
    layers: tuple[tuple[frozenset[int], frozenset[int], frozenset[int]], ...] | None = None


def classify_vertices(
    g: Graph,
    sr: SpectralResult,
    constants: Constants,
    root: int | None = None,
) -> WeightClassification:
    """Partition vertices into the Perron-weight classes for ``constants``."""
    v = sr.perron
    if v.shape != (g.n,):
        raise ParameterError("spectral result does not match graph size")
    alpha, eta, k = constants.alpha, constants.eta, constants.k
    big = frozenset(u for u in range(g.n) if v[u] > alpha)
    small = frozenset(range(g.n)) - big
    medium = frozenset(u for u in range(g.n) if v[u] >= alpha / 3)
    top = frozenset(u for u in range(g.n) if v[u] >= eta)
    top_mask = sum(1 << u for u in top)
    exceptional = frozenset(
        u for u in range(g.n)
        if u not in top and (g.rows[u] & top_mask).bit_count() <= k - 1
    )
    rest = frozenset(range(g.n)) - top - exceptional
    layers = None
    if root is not None:
        triples = []
        for layer_mask in g.bfs_masks(root):
            layer = set(bits(layer_mask))
            triples.append((
                frozenset(layer & big),
                frozenset(layer & small),
                frozenset(layer & medium),
            ))
        layers = tuple(triples)
    return WeightClassification(
        constants=constants,
        L=big,
        S=small,
        M=medium,
        Lprime=top,
        E=exceptional,
        R=rest,
        root=root,
        layers=layers,
    )
