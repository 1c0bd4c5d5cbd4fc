"""Brute-force oracles for the inequalities behind the constants engine.

Everything here certifies at desk scale, by exhaustion rather than sampling:

* Rademacher p-th moments are exact averages over all 2^N sign patterns.
* The operator norm of a real m-linear form on l_inf^N is exact: a
  multilinear form attains its sup at cube vertices, so slots 2..m are
  enumerated over sign vectors while slot 1 collapses to an l1 sum.
* The weak-(1) norm on l_inf^N is the max coordinate-wise absolute column
  sum (the extreme points of the dual l1 ball are coordinate functionals).

The complex operator norm has no finite vertex set, so a seeded
coordinate-ascent over per-coordinate unimodular phases reports a lower
bound only, and complex checks are diagnostic: an underestimated norm can
only inflate the reported ratio, never mask a violation.

Certified comparisons use a relative slack of 1e-9; the property-suite
drivers at the bottom generate seeded random instances so the command-line
front end and the test suite exercise identical machinery.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, Field, SizeLimitError, digest_bytes
from .exponents import blei_f, blei_w
from .recursion import ConstantRecord, best_constant
from .special import khinchine_a, khinchine_b

__all__ = [
    "CERTIFIED_SLACK",
    "MultilinearForm",
    "VectorFamily",
    "VerificationReport",
    "lp_norm",
    "rademacher_moment",
    "khinchine_check",
    "sup_norm_real",
    "sup_norm_complex_lb",
    "mixed_norm_lhs",
    "bh_check",
    "weak1_norm",
    "multiple_summing_check",
    "blei_check",
    "extremal_search",
    "random_form",
    "littlewood_form",
    "random_family",
    "canonical_family",
    "khinchine_suite",
    "bh_suite",
    "blei_suite",
    "summing_suite",
]

# Relative slack separating float noise from genuine violations.
CERTIFIED_SLACK = 1e-9

# Enumerating slots 2..m costs prod(2^N_k) <= 2^MAX_ENUM_BITS evaluations.
MAX_ENUM_BITS = 24

# Exact Rademacher averages enumerate 2^N sign patterns.
MAX_RADEMACHER_N = 20


@dataclass(frozen=True)
class MultilinearForm:
    """Dense coefficient tensor of an m-linear form on l_inf^{N_1} x ... x l_inf^{N_m}."""

    coeffs: np.ndarray
    field: Field

    def __post_init__(self):
        arr = np.asarray(
            self.coeffs, dtype=np.complex128 if self.field is Field.COMPLEX else np.float64
        )
        if arr.ndim < 1:
            raise DomainError("a multilinear form needs at least one slot")
        if not np.all(np.isfinite(arr)):
            raise DomainError("form coefficients must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def m(self) -> int:
        return self.coeffs.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self.coeffs.shape

    def digest(self) -> str:
        shape = ",".join(map(str, self.dims))
        return f"{self.field.value};{shape};{digest_bytes(self.coeffs.tobytes())}"


@dataclass(frozen=True)
class VectorFamily:
    """A finite family of vectors in l_inf^N, one row per vector."""

    vectors: np.ndarray
    field: Field

    def __post_init__(self):
        arr = np.asarray(
            self.vectors, dtype=np.complex128 if self.field is Field.COMPLEX else np.float64
        )
        if arr.ndim != 2:
            raise DomainError("a vector family is a 2-d array (one row per vector)")
        if not np.all(np.isfinite(arr)):
            raise DomainError("family entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "vectors", arr)

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one inequality check."""

    check: str
    params: str
    lhs: float
    rhs: float
    ratio: float
    constant: ConstantRecord | None
    passed: bool
    seed: int
    trials: int
    witness: np.ndarray | None = None


# --------------------------------------------------------------------------
# Khinchine oracle
# --------------------------------------------------------------------------

def rademacher_moment(a, p: float) -> float:
    """Exact ( 2^-N  sum_{eps in {+-1}^N} |sum_n a_n eps_n|^p )^(1/p).

    Enumerates all sign patterns by iterative doubling; N <= 20.
    """
    if p <= 0:
        raise DomainError(f"moment exponent must be positive, got {p}")
    a = np.asarray(a)
    if a.ndim != 1:
        raise DomainError("coefficients must form a vector")
    if a.size > MAX_RADEMACHER_N:
        raise SizeLimitError(f"exact enumeration limited to N <= {MAX_RADEMACHER_N}, got {a.size}")
    sums = np.zeros(1, dtype=np.complex128 if np.iscomplexobj(a) else np.float64)
    for coef in a:
        sums = np.concatenate([sums + coef, sums - coef])
    return float(np.mean(np.abs(sums) ** p) ** (1.0 / p))


def khinchine_check(a, p: float, seed: int = 0) -> VerificationReport:
    """Check A_p ||a||_2 <= (E|sum a_n r_n|^p)^(1/p) <= B_p ||a||_2 exactly."""
    a = np.asarray(a)
    moment = rademacher_moment(a, p)
    l2 = float(np.linalg.norm(a))
    lower = khinchine_a(p).a_p * l2
    upper = khinchine_b(p).b_p * l2
    slack = 1e-12
    passed = moment >= lower * (1.0 - slack) and moment <= upper * (1.0 + slack)
    ratio = moment / l2 if l2 > 0 else 1.0
    params = f"p={float(p)!r};n={a.size};{digest_bytes(np.ascontiguousarray(a).tobytes())}"
    return VerificationReport("khinchine", params, moment, upper, ratio, None, passed, seed, 1)


# --------------------------------------------------------------------------
# Operator norms
# --------------------------------------------------------------------------

def _sign_vectors(n: int) -> np.ndarray:
    """All 2^n sign vectors of length n as rows of +-1.0."""
    bits = (np.arange(2**n, dtype=np.int64)[:, None] >> np.arange(n)) & 1
    return 1.0 - 2.0 * bits.astype(np.float64)


def sup_norm_real(form: MultilinearForm) -> float:
    """Exact operator norm of a real form.

    The sup over the product of unit balls is attained at cube vertices, so
    slots 2..m are enumerated over sign vectors while the slot-1 maximization
    reduces to an l1 sum.  Raises when the enumeration would exceed
    2^MAX_ENUM_BITS sign combinations.
    """
    if form.field is not Field.REAL:
        raise DomainError("sup_norm_real handles real forms only; use sup_norm_complex_lb")
    if form.m == 1:
        return float(np.abs(form.coeffs).sum())
    dims = form.dims
    if sum(dims[1:]) > MAX_ENUM_BITS:
        raise SizeLimitError(
            f"sign enumeration over slots 2..m needs 2^{sum(dims[1:])} > 2^{MAX_ENUM_BITS} evaluations"
        )
    last = _sign_vectors(dims[-1])
    best = 0.0
    middle = [list(_sign_vectors(n)) for n in dims[1:-1]]
    for combo in itertools.product(*middle):
        w = form.coeffs
        for eps in combo:
            w = np.tensordot(w, eps, axes=([1], [0]))
        # w has shape (N_1, N_m); all last-slot vertices at once
        values = np.abs(w @ last.T).sum(axis=0)
        best = max(best, float(values.max()))
    return best


def _contract_except(coeffs: np.ndarray, zs: list[np.ndarray], k: int) -> np.ndarray:
    """Contract every slot but k with its vector; returns a vector over slot k."""
    w = coeffs
    for j in reversed(range(coeffs.ndim)):
        if j != k:
            w = np.tensordot(w, zs[j], axes=([j], [0]))
    return w


def sup_norm_complex_lb(form: MultilinearForm, restarts: int = 16, seed: int = 0) -> float:
    """Seeded lower bound on the operator norm of a complex form.

    Coordinate ascent over per-coordinate unimodular phases: with all other
    coordinates fixed the value is a z + b in one coordinate z, maximized on
    the circle by aligning a z with b.  The first restart starts from the
    all-ones point, the rest from random phases; after convergence the
    slot-1 l1 collapse is applied as a final (still feasible) improvement.
    """
    if form.field is not Field.COMPLEX:
        raise DomainError("sup_norm_complex_lb handles complex forms only")
    rng = np.random.default_rng(seed)
    dims = form.dims
    best = 0.0
    for restart in range(max(1, restarts)):
        if restart == 0:
            zs = [np.ones(n, dtype=np.complex128) for n in dims]
        else:
            zs = [np.exp(2j * np.pi * rng.random(n)) for n in dims]
        current = 0.0
        for _ in range(200):
            for k in range(form.m):
                partial = _contract_except(form.coeffs, zs, k)
                total = np.dot(partial, zs[k])
                for i in range(dims[k]):
                    v = partial[i]
                    if v == 0:
                        continue
                    b = total - v * zs[k][i]
                    z_new = np.conj(v) / abs(v)
                    if b != 0:
                        z_new *= b / abs(b)
                    total = b + v * z_new
                    zs[k][i] = z_new
            value = abs(np.dot(_contract_except(form.coeffs, zs, 0), zs[0]))
            if value <= current * (1.0 + 1e-12) + 1e-300:
                current = max(current, value)
                break
            current = value
        # slot-1 collapse: optimal slot-1 phases give the l1 norm
        collapsed = float(np.abs(_contract_except(form.coeffs, zs, 0)).sum())
        best = max(best, current, collapsed)
    return best


# --------------------------------------------------------------------------
# Mixed norms and the Bohnenblust-Hille check
# --------------------------------------------------------------------------

def lp_norm(values, p: float) -> float:
    """(sum |v|^p)^(1/p) for p > 0."""
    if p <= 0:
        raise DomainError(f"lp exponent must be positive, got {p}")
    total = float(np.sum(np.abs(np.asarray(values)) ** p))
    return total ** (1.0 / p)


def mixed_norm_lhs(form: MultilinearForm) -> float:
    """Coefficient l_{2m/(m+1)} norm of the form."""
    m = form.m
    return lp_norm(form.coeffs, 2.0 * m / (m + 1.0))


def bh_check(
    form: MultilinearForm,
    constant: ConstantRecord,
    restarts: int = 16,
    seed: int = 0,
) -> VerificationReport:
    """Check mixed_norm_lhs <= C * ||U||.

    Real forms are certified against the exact vertex oracle.  Complex forms
    are diagnostic: the norm is a lower bound, so the ratio may only be
    inflated and the check never hard-fails.
    """
    lhs = mixed_norm_lhs(form)
    if form.field is Field.REAL:
        sup = sup_norm_real(form)
        check = "bh"
        certified = True
    else:
        sup = sup_norm_complex_lb(form, restarts=restarts, seed=seed)
        check = "bh-diagnostic"
        certified = False
    if sup == 0.0 and lhs > 1e-12:
        raise RuntimeError("zero operator norm with nonzero coefficients: oracle bug")
    rhs = constant.value * sup
    ratio = lhs / sup if sup > 0 else 0.0
    passed = True if not certified else lhs <= rhs * (1.0 + CERTIFIED_SLACK)
    return VerificationReport(check, form.digest(), lhs, rhs, ratio, constant, passed, seed, 1)


# --------------------------------------------------------------------------
# Multiple (p;1)-summing reformulation
# --------------------------------------------------------------------------

def weak1_norm(family: VectorFamily) -> float:
    """sup over unit dual functionals of sum_j |phi(x_j)|.

    On l_inf^N the dual ball is the l1 ball, whose extreme points are
    unimodular multiples of coordinate functionals, and the objective is
    convex; the sup is therefore the max absolute column sum.
    """
    if family.count == 0:
        return 0.0
    return float(np.abs(family.vectors).sum(axis=0).max())


def multiple_summing_check(
    form: MultilinearForm,
    families: list[VectorFamily],
    constant: ConstantRecord,
    p: float | None = None,
    seed: int = 0,
) -> VerificationReport:
    """Check the multiple (p;1)-summing inequality on given vector families.

    lhs = ( sum_{j_1..j_m} |U(x^(1)_{j_1}, .., x^(m)_{j_m})|^p )^(1/p),
    rhs = C * ||U|| * prod_k weak1_norm(family_k).  With canonical-basis
    families this reduces to the plain coefficient-norm check.
    """
    if form.field is not Field.REAL:
        raise DomainError("the certified summing check handles real forms only")
    if len(families) != form.m:
        raise DomainError(f"need one family per slot: {form.m} slots, {len(families)} families")
    for k, family in enumerate(families):
        if family.dimension != form.dims[k]:
            raise DomainError(
                f"slot {k + 1} has dimension {form.dims[k]} but its family lives in l_inf^{family.dimension}"
            )
    if p is None:
        p = 2.0 * form.m / (form.m + 1.0)
    values = form.coeffs
    for family in families:
        # consumes axis 0, appends the family index last; after m rounds the
        # axes are (j_1, ..., j_m) again
        values = np.tensordot(values, family.vectors, axes=([0], [1]))
    lhs = lp_norm(values, p)
    sup = sup_norm_real(form)
    weak_product = math.prod(weak1_norm(f) for f in families)
    rhs = constant.value * sup * weak_product
    scale = sup * weak_product
    ratio = lhs / scale if scale > 0 else 0.0
    passed = lhs <= rhs * (1.0 + CERTIFIED_SLACK)
    params = f"{form.digest()};p={p!r};families={','.join(str(f.count) for f in families)}"
    return VerificationReport("summing", params, lhs, rhs, ratio, constant, passed, seed, 1)


# --------------------------------------------------------------------------
# Blei inequality check
# --------------------------------------------------------------------------

def blei_check(matrix, q: float, s1: float, s2: float, seed: int = 0) -> VerificationReport:
    """Check Blei's mixed-norm inequality on a positive matrix.

    lhs = (sum a_ij^w)^(1/w); rhs combines row l_q norms to the s1-th power
    with weight f(s1,s2)/s1 and column l_q norms to the s2-th power with
    weight f(s2,s1)/s2.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise DomainError("Blei's inequality is stated for matrices")
    if not np.all(a > 0):
        raise DomainError("Blei's inequality requires strictly positive entries")
    w = blei_w(q, s1, s2)
    f1 = blei_f(q, s1, s2)
    f2 = blei_f(q, s2, s1)
    lhs = float(np.sum(a**w)) ** (1.0 / w)
    row_norms = np.sum(a**q, axis=1) ** (1.0 / q)
    col_norms = np.sum(a**q, axis=0) ** (1.0 / q)
    rhs = float(np.sum(row_norms**s1)) ** (f1 / s1) * float(np.sum(col_norms**s2)) ** (f2 / s2)
    passed = lhs <= rhs * (1.0 + CERTIFIED_SLACK)
    params = f"shape={a.shape[0]}x{a.shape[1]};q={q!r};s1={s1!r};s2={s2!r};{digest_bytes(a.tobytes())}"
    return VerificationReport("blei", params, lhs, rhs, lhs / rhs, None, passed, seed, 1)


# --------------------------------------------------------------------------
# Extremal search
# --------------------------------------------------------------------------

def _search_ratio(form: MultilinearForm, restarts: int, seed: int) -> float:
    if form.field is Field.REAL:
        sup = sup_norm_real(form)
    else:
        sup = sup_norm_complex_lb(form, restarts=restarts, seed=seed)
    if sup == 0.0:
        return 0.0
    return mixed_norm_lhs(form) / sup


def extremal_search(
    m: int,
    n: int,
    field: Field = Field.REAL,
    budget: int = 100_000,
    seed: int = 0,
) -> VerificationReport:
    """Maximize mixed_norm_lhs / ||U|| over coefficient tensors.

    Random restarts (budget/1000 of them) followed by greedy coordinate
    sweeps; per coordinate the candidate moves are the vertices {-1, +1} and
    continuous steps of size 1, 0.1 and 0.01 (phase rotations as well in the
    complex case).  Deterministic for a fixed seed.  The best ratio found is
    re-evaluated with the exact real oracle, so for real scalars the report
    is a certified lower bound on the extremal ratio; the complex report is
    diagnostic because its norm is itself only a lower bound.
    """
    if m < 1 or n < 1:
        raise DomainError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    if budget < 1:
        raise DomainError(f"the evaluation budget must be positive, got {budget}")
    dims = (n,) * m
    if m > 1 and sum(dims[1:]) > MAX_ENUM_BITS:
        raise SizeLimitError("tensor too large for the exact vertex oracle")
    rng = np.random.default_rng(seed)
    lb_restarts = 4  # phase-ascent effort per complex evaluation
    steps = (1.0, 0.1, 0.01)
    restarts = max(1, int(budget) // 1000)
    evals = 0
    best_ratio = -1.0
    best_tensor: np.ndarray | None = None

    def evaluate(arr: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        return _search_ratio(MultilinearForm(arr, field), lb_restarts, seed)

    def snapped(arr: np.ndarray) -> np.ndarray:
        # joint vertex move: every entry to the nearest unimodular point
        safe = np.where(arr == 0, 1.0, arr)
        return safe / np.abs(safe)

    for _ in range(restarts):
        if evals >= budget:
            break
        arr = random_form(dims, field, rng).coeffs.copy()
        current = evaluate(arr)
        improved = True
        while improved and evals < budget:
            improved = False
            for idx in np.ndindex(*dims):
                original = arr[idx]
                candidates = [1.0, -1.0]
                for s in steps:
                    candidates.extend((original + s, original - s))
                if field is Field.COMPLEX:
                    candidates.extend((1j, -1j))
                    for s in steps:
                        candidates.append(original * np.exp(1j * s))
                        candidates.append(original * np.exp(-1j * s))
                for candidate in candidates:
                    if evals >= budget:
                        break
                    arr[idx] = candidate
                    ratio = evaluate(arr)
                    if ratio > current + 1e-15:
                        current = ratio
                        original = candidate
                        improved = True
                arr[idx] = original
            if not improved and evals < budget:
                vertex = snapped(arr)
                ratio = evaluate(vertex)
                if ratio > current + 1e-15:
                    arr, current, improved = vertex, ratio, True
        if current > best_ratio:
            best_ratio = current
            best_tensor = arr.copy()

    best_form = MultilinearForm(best_tensor, field)
    ratio = _search_ratio(best_form, 4 * lb_restarts, seed)  # final re-evaluation
    reference = best_constant(m, field) if m >= 2 else None
    certified = field is Field.REAL
    upper = reference.value if reference is not None else 1.0
    passed = True if not certified else ratio <= upper * (1.0 + CERTIFIED_SLACK)
    check = "search" if certified else "search-diagnostic"
    params = f"m={m};n={n};budget={budget};{best_form.digest()}"
    lhs = mixed_norm_lhs(best_form)
    norm = lhs / ratio if ratio > 0 else 0.0
    return VerificationReport(
        check, params, lhs, upper * norm, ratio, reference, passed, seed, evals, best_form.coeffs
    )


# --------------------------------------------------------------------------
# Seeded generators
# --------------------------------------------------------------------------

def random_form(dims: tuple[int, ...], field: Field, rng: np.random.Generator) -> MultilinearForm:
    """Coefficients uniform on [-1, 1] (real) or the unit disk (complex)."""
    if field is Field.REAL:
        return MultilinearForm(rng.uniform(-1.0, 1.0, size=dims), field)
    radius = np.sqrt(rng.random(dims))
    angle = 2.0 * np.pi * rng.random(dims)
    return MultilinearForm(radius * np.exp(1j * angle), field)


def littlewood_form(dim: int = 2, field: Field = Field.REAL) -> MultilinearForm:
    """The 2x2 sign matrix (1,1;1,-1) zero-padded to dim x dim.

    Attains the bilinear ratio 2^(1/2) exactly.
    """
    if dim < 2:
        raise DomainError("the Littlewood matrix needs dim >= 2")
    arr = np.zeros((dim, dim))
    arr[:2, :2] = [[1.0, 1.0], [1.0, -1.0]]
    return MultilinearForm(arr, field)


def random_family(count: int, dimension: int, field: Field, rng: np.random.Generator) -> VectorFamily:
    if field is Field.REAL:
        return VectorFamily(rng.uniform(-1.0, 1.0, size=(count, dimension)), field)
    radius = np.sqrt(rng.random((count, dimension)))
    angle = 2.0 * np.pi * rng.random((count, dimension))
    return VectorFamily(radius * np.exp(1j * angle), field)


def canonical_family(dimension: int, field: Field = Field.REAL) -> VectorFamily:
    """The canonical basis e_1..e_N of l_inf^N as a family."""
    return VectorFamily(np.eye(dimension), field)


# --------------------------------------------------------------------------
# Property-suite drivers
# --------------------------------------------------------------------------

def khinchine_suite(
    trials: int,
    n_max: int = 10,
    ps: tuple[float, ...] = (1.0, 4.0 / 3.0, 1.5, 5.0 / 3.0, 2.0),
    seed: int = 42,
) -> list[VerificationReport]:
    """Random coefficient vectors checked against the exact Rademacher oracle."""
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(trials):
        n = int(rng.integers(1, n_max + 1))
        a = rng.uniform(-1.0, 1.0, size=n)
        for p in ps:
            reports.append(khinchine_check(a, p, seed=seed))
    return reports


def bh_suite(
    m: int,
    dim: int,
    trials: int,
    seed: int = 42,
    constant: ConstantRecord | None = None,
) -> list[VerificationReport]:
    """Random real forms certified against the exact oracles.

    For bilinear runs the first instance is the Littlewood sign matrix, so
    the maximal ratio 2^(1/2) is always exercised.
    """
    if constant is None:
        constant = best_constant(m, Field.REAL)
    rng = np.random.default_rng(seed)
    reports = []
    for t in range(trials):
        if t == 0 and m == 2 and dim >= 2:
            form = littlewood_form(dim)
        else:
            form = random_form((dim,) * m, Field.REAL, rng)
        reports.append(bh_check(form, constant, seed=seed))
    return reports


def blei_suite(
    trials: int,
    max_rows: int = 6,
    max_cols: int = 8,
    s_low: float = 1.0,
    s_high: float = 1.9,
    seed: int = 42,
) -> list[VerificationReport]:
    """Random positive matrices with random Blei parameters at q = 2."""
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(trials):
        rows = int(rng.integers(1, max_rows + 1))
        cols = int(rng.integers(1, max_cols + 1))
        matrix = 1.0 - rng.random((rows, cols))  # entries in (0, 1]
        s1 = float(rng.uniform(s_low, s_high))
        s2 = float(rng.uniform(s_low, s_high))
        reports.append(blei_check(matrix, 2.0, s1, s2, seed=seed))
    return reports


def summing_suite(
    m: int,
    dim: int,
    trials: int,
    seed: int = 42,
    constant: ConstantRecord | None = None,
) -> list[VerificationReport]:
    """Random real forms and random vector families for the summing check."""
    if constant is None:
        constant = best_constant(m, Field.REAL)
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(trials):
        form = random_form((dim,) * m, Field.REAL, rng)
        families = [
            random_family(int(rng.integers(1, dim + 2)), dim, Field.REAL, rng)
            for _ in range(m)
        ]
        reports.append(multiple_summing_check(form, families, constant, seed=seed))
    return reports
