"""Sine-basis matrix mechanics for the shifted regularized potential.

The potential is centred in a hard box of width a (basis sqrt(2/a)
sin(n pi x / a)); the box size enters through rho = (oscillator quantum) /
(box ground energy), and the strip |x - a/2| < eps a/2 carries the constant
cutoff value.  Matrix elements connect only equal-parity indices
(n +/- m even), so the Hamiltonian splits into two dense symmetric blocks:
odd basis indices give even-parity states and vice versa.

All elements are closed-form in the tabulated functions g, h, k, l of
j = n -/+ m and the sine integral; assembly is vectorized by building the
j-tables once (this also caches every distinct Si argument).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvaluationOverflowError
from .eigensolver import eigh_lowest
from .specfun import sine_integral

_BLOCKS = ("even", "odd")  # wave-function parity about the box centre


def epsilon_from_delta(delta: float, rho: float) -> float:
    """Box-relative cutoff: eps = (2/pi) sqrt(2/rho) delta."""
    return 2.0 / math.pi * math.sqrt(2.0 / rho) * delta


@dataclass
class MatrixModel:
    """Parity-blocked sine-basis Hamiltonian in units of the box quantum."""

    alpha: float
    rho: float
    epsilon: float
    n_max: int
    blocks: dict = field(repr=False)           # parity -> dense symmetric matrix
    indices: dict = field(repr=False)          # parity -> basis indices (1-based)

    @property
    def hbar_omega_in_e1(self) -> float:
        return self.rho


@dataclass(frozen=True)
class MatrixEigenpair:
    """One Ritz eigenpair: energy in box-quantum units, unit coefficients."""

    energy: float
    coefficients: np.ndarray
    block: str
    n_max_used: int

    def energy_hw(self, rho: float) -> float:
        return self.energy / rho


def v_epsilon(alpha: float, rho: float, epsilon: float) -> float:
    """Constant strip value in box-quantum units."""
    inv = 4.0 * alpha / (math.pi * math.pi * epsilon * epsilon)
    if not math.isfinite(inv):
        raise EvaluationOverflowError(
            "v_epsilon: alpha/epsilon^2 exceeds double range; smallest usable "
            f"epsilon is ~{math.sqrt(abs(alpha) / 1e300):.3e}",
            threshold=math.sqrt(abs(alpha) / 1e300))
    return math.pi ** 2 * rho ** 2 * epsilon ** 2 / 16.0 + inv


def _sinc(x):
    out = np.ones_like(x)
    nz = x != 0.0
    out[nz] = np.sin(x[nz]) / x[nz]
    return out


def _si_values(args):
    flat = np.asarray(args, dtype=float).ravel()
    vals = np.empty(flat.size)
    cache = {}
    for i, v in enumerate(flat):
        if v not in cache:
            cache[v] = sine_integral(v)
        vals[i] = cache[v]
    return vals.reshape(np.shape(args))


def _coupling_tables(alpha, rho, epsilon, n_max):
    """g, h, k tables over even j = |n -/+ m| in [0, 2 n_max].

    Index by j//2.  cos(p/2) for even j is exactly (-1)^(j/2); the
    1 - cos(p eps/2) piece of l is evaluated as 2 sin^2(p eps/4) to dodge
    cancellation at small arguments.
    """
    half = np.arange(n_max + 1)              # j = 2*half
    j = 2.0 * half
    p = math.pi * j
    cos_half_p = np.where(half % 2 == 0, 1.0, -1.0)
    pe2 = 0.5 * p * epsilon

    g = cos_half_p * _sinc(pe2)

    h = np.zeros(n_max + 1)
    nzp = p != 0.0
    pnz = p[nzp]
    pe2nz = pe2[nzp]
    h[nzp] = cos_half_p[nzp] * (
        2.0 / pnz ** 3 * np.sin(pe2nz)
        + (cos_half_p[nzp] - epsilon * np.cos(pe2nz)) / pnz ** 2
        - epsilon ** 2 / (4.0 * pnz) * np.sin(pe2nz))

    # l_eps(j) = (4/eps) sin^2(p eps/4) - 2 [1 - cos(p/2)] + p [Si(p/2) - Si(p eps/2)]
    ell = np.zeros(n_max + 1)
    one_minus_cos_half = np.where(cos_half_p > 0.0, 0.0, 2.0)
    si_big = _si_values(0.5 * p)
    si_small = _si_values(np.abs(pe2nz)) if pe2nz.size else np.empty(0)
    ell[nzp] = (4.0 / epsilon * np.sin(0.25 * p[nzp] * epsilon) ** 2
                - 2.0 * one_minus_cos_half[nzp]
                + pnz * (si_big[nzp] - si_small))
    k = cos_half_p * (2.0 / epsilon * (1.0 - epsilon) - ell)
    return g, h, k


def element(n: int, m: int, alpha: float, rho: float, epsilon: float) -> float:
    """Single Hamiltonian element H_nm / E1; pure in (n, m, parameters)."""
    if (n + m) % 2 == 1:
        return 0.0
    g, h, k = _coupling_tables(alpha, rho, epsilon, max(n, m))
    veps = v_epsilon(alpha, rho, epsilon)
    dm = abs(n - m) // 2
    sm = (n + m) // 2
    val = 0.0
    if n == m:
        val += float(n) ** 2
        val += epsilon * veps * (1.0 - (-1.0) ** n
                                 * math.sin(math.pi * n * epsilon)
                                 / (math.pi * n * epsilon))
        val += 2.0 * ((1.0 - epsilon ** 3) / 24.0 - h[sm]) \
            * math.pi ** 2 * rho ** 2 / 4.0
        val += 2.0 * alpha / math.pi ** 2 * (k[0] - k[sm])
    else:
        val += epsilon * veps * (g[dm] - g[sm])
        val += 2.0 * (h[dm] - h[sm]) * math.pi ** 2 * rho ** 2 / 4.0
        val += 2.0 * alpha / math.pi ** 2 * (k[dm] - k[sm])
    return val


def assemble(alpha: float, rho: float, epsilon: float, n_max: int,
             split_blocks: bool = True) -> MatrixModel:
    """Build the parity blocks (or one full matrix) of H / E1.

    Element computation is a pure function of (n, m, parameters); the
    vectorized fill just evaluates it over index grids.
    """
    if n_max < 4:
        raise DomainError(f"assemble: n_max must be >= 4, got {n_max}")
    if not 0.0 < epsilon < 0.5:
        raise DomainError(f"assemble: epsilon must lie in (0, 0.5), got {epsilon}")
    if rho <= 0.0:
        raise DomainError(f"assemble: rho must be positive, got {rho}")
    veps = v_epsilon(alpha, rho, epsilon)
    g, h, k = _coupling_tables(alpha, rho, epsilon, n_max)
    pr2 = math.pi ** 2 * rho ** 2 / 4.0
    api2 = alpha / math.pi ** 2

    def build(idx):
        half_d = np.abs(idx[:, None] - idx[None, :]) // 2
        half_s = (idx[:, None] + idx[None, :]) // 2
        mat = epsilon * veps * (g[half_d] - g[half_s]) \
            + 2.0 * pr2 * (h[half_d] - h[half_s]) \
            + 2.0 * api2 * (k[half_d] - k[half_s])
        # elements with odd n+m vanish identically (even potential)
        odd_sum = (idx[:, None] + idx[None, :]) % 2 == 1
        mat[odd_sum] = 0.0
        dia = np.arange(idx.size)
        nn = idx.astype(float)
        mat[dia, dia] = (
            nn ** 2
            + epsilon * veps * (1.0 - (-1.0) ** idx
                                * _sinc(math.pi * epsilon * nn))
            + 2.0 * pr2 * ((1.0 - epsilon ** 3) / 24.0 - h[idx])
            + 2.0 * api2 * (k[0] - k[idx]))
        return mat

    if split_blocks:
        idx_even_par = np.arange(1, n_max + 1, 2)   # odd n: even parity
        idx_odd_par = np.arange(2, n_max + 1, 2)    # even n: odd parity
        blocks = {"even": build(idx_even_par), "odd": build(idx_odd_par)}
        indices = {"even": idx_even_par, "odd": idx_odd_par}
    else:
        idx = np.arange(1, n_max + 1)
        blocks = {"full": build(idx)}
        indices = {"full": idx}
    return MatrixModel(alpha=alpha, rho=rho, epsilon=epsilon, n_max=n_max,
                       blocks=blocks, indices=indices)


def eigensolve(model: MatrixModel, k: int, want_vectors: bool = True):
    """Lowest k eigenpairs per parity block, merged and sorted by energy."""
    if k > model.n_max:
        raise DomainError(f"eigensolve: k={k} exceeds n_max={model.n_max}")
    pairs = []
    for block, mat in model.blocks.items():
        kk = min(k, mat.shape[0])
        vals, vecs = eigh_lowest(mat, kk, want_vectors=want_vectors)
        for j in range(kk):
            pairs.append(MatrixEigenpair(
                energy=float(vals[j]),
                coefficients=vecs[:, j].copy() if want_vectors else None,
                block=block, n_max_used=model.n_max))
    pairs.sort(key=lambda p: p.energy)
    return pairs


def reconstruct_wavefunction(pair: MatrixEigenpair, model: MatrixModel,
                             x_grid) -> np.ndarray:
    """Real-space samples of sum_m c_m sqrt(2/a) sin(m pi x / a) on [0, a].

    The box width is a = pi sqrt(rho/2) oscillator lengths.  The global sign
    is fixed so the first sample right of the box centre with magnitude
    above 1e-8 is positive.
    """
    a_box = math.pi * math.sqrt(model.rho / 2.0)
    x = np.asarray(x_grid, dtype=float)
    if np.any((x < 0.0) | (x > a_box)):
        raise DomainError("reconstruct_wavefunction: grid must lie in [0, a]")
    idx = model.indices[pair.block]
    phases = np.outer(x / a_box * math.pi, idx)
    psi = math.sqrt(2.0 / a_box) * (np.sin(phases) @ pair.coefficients)
    right = np.where((x > 0.5 * a_box) & (np.abs(psi) > 1e-8))[0]
    if right.size and psi[right[0]] < 0.0:
        psi = -psi
    return psi
