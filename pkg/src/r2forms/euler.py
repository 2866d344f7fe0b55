"""Assembly of the predicted leading constant.

The constant multiplying X^2 in the lattice-sum asymptotic is
pi^2 * vol(R) * prod_p K_p, where for odd p the factor K_p is a character-
weighted double sum of local densities over prime-power moduli and K_2 is
the normalized count of residue pairs mod 2^n whose two form values both
project into the dyadic residue set.

Truncation is explicit and reported: exact factors carry the magnitude of
their outermost included shell (times a geometric safety factor) as a tail
estimate, the first-order large-p factors carry kappa / p^2, and the product
over p <= P ships with its partial-product history so slow convergence is
visible rather than hidden.
"""

import math
from dataclasses import dataclass

import numpy as np

from .arith import chi, in_E_mod, is_prime, sieve_primes
from .errors import BadPrimeError
from .forms import BinaryForm, ProblemInstance, ensure_validated, instance_id, region_area
from .localdens import _rho_prime_power, cubic_roots_mod_p

__all__ = [
    "EulerFactor",
    "ConstantReport",
    "k_p",
    "k_p_large",
    "k_2",
    "is_good_prime",
    "predicted_constant",
    "SMALL_PRIME_THRESHOLD",
    "KAPPA_TAIL",
]

# Exact factors are used below this bound (and at bad primes above it).
SMALL_PRIME_THRESHOLD = 50

# Tail constant for the first-order factor: the dropped shells total at most
# about (1 + 2*rho(1,p^2)/p^2 + ...) / p^2; kappa = 40 was calibrated against
# exact factors over the primes up to 1000 on a spread of instances and holds
# with a wide margin.
KAPPA_TAIL = 40.0


@dataclass(frozen=True)
class EulerFactor:
    """One local factor of the predicted constant.

    tail_bound estimates the omitted terms: for exact factors, twice the
    magnitude of the outermost shell kept; for first-order factors,
    KAPPA_TAIL / p^2.  exact marks fully enumerated (or stabilized dyadic)
    values as opposed to the first-order approximation.
    """

    p: int
    value: float
    truncation_level: int
    tail_bound: float
    exact: bool

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("factor value must be finite")
        if self.tail_bound < 0:
            raise ValueError("tail bound must be nonnegative")


def k_p(p: int, L: BinaryForm, C: BinaryForm, V: int = 6) -> EulerFactor:
    """Exact truncated factor at an odd prime.

    Sums chi(p)^(v1+v2) * rho(p^v1, p^v2) / p^(2(v1+v2)) over all shells
    v1 + v2 <= V, scaled by (1 - chi(p)/p)^2.  Densities are exact block
    counts; the truncation alone is approximate and is reported through
    tail_bound (twice the outermost shell's magnitude).
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"k_p needs an odd prime, got {p}")
    if V < 2:
        raise ValueError(f"truncation level must be at least 2, got {V}")
    cp = chi(p)
    shells = []
    for s in range(V + 1):
        numer = 0
        for v1 in range(s + 1):
            numer += _rho_prime_power(p, v1, s - v1, L, C)
        shells.append(cp**s * numer / p ** (2 * s))
    prefactor = (1 - cp / p) ** 2
    value = prefactor * math.fsum(shells)
    tail = 2.0 * abs(shells[-1]) * prefactor
    return EulerFactor(p=p, value=value, truncation_level=V, tail_bound=tail, exact=True)


def _lead(F: BinaryForm) -> int:
    for c in F.coeffs:
        if c != 0:
            return c
    raise AssertionError("zero form")


def is_good_prime(p: int, L: BinaryForm, C: BinaryForm) -> bool:
    """Whether the first-order factor formula applies at p.

    Requires p odd and not dividing the leading coefficient of either form,
    so that the shell-one densities take their generic closed forms
    rho(p,1) = p and rho(1,p) = 1 + (p-1) * n_p.
    """
    return p != 2 and _lead(L) % p != 0 and _lead(C) % p != 0


def k_p_large(p: int, L: BinaryForm, C: BinaryForm) -> EulerFactor:
    """First-order factor for a good odd prime: shells 0 and 1 only.

    Uses rho(p,1) = p and rho(1,p) = 1 + (p-1) * n_p with n_p the projective
    root count of the cubic mod p; dropped shells are bounded by
    KAPPA_TAIL / p^2.  Raises BadPrimeError when the closed forms are not
    guaranteed, signalling the caller to take the exact route.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"k_p_large needs an odd prime, got {p}")
    if not is_good_prime(p, L, C):
        raise BadPrimeError(f"prime {p} divides a leading coefficient; use k_p")
    cp = chi(p)
    n_p = cubic_roots_mod_p(C, p)
    rho_linear = p
    rho_cubic = 1 + (p - 1) * n_p
    value = (1 - cp / p) ** 2 * (1 + cp * rho_linear / p**2 + cp * rho_cubic / p**2)
    return EulerFactor(
        p=p, value=value, truncation_level=1, tail_bound=KAPPA_TAIL / p**2, exact=False
    )


def _dyadic_pair_count(L: BinaryForm, C: BinaryForm, n: int) -> int:
    """Residue pairs x mod 2^n with both form values projecting into the dyadic set."""
    size = 1 << n
    mask = size - 1
    table = np.zeros(size, dtype=bool)
    for res in range(size):
        table[res] = in_E_mod(res, n)
    aL = L.coeffs[0] & mask
    bL = L.coeffs[1] & mask
    c0, c1, c2, c3 = (c & mask for c in C.coeffs)
    x1 = np.arange(size, dtype=np.int64)
    count = 0
    block = 256
    for start in range(0, size, block):
        x2 = np.arange(start, min(start + block, size), dtype=np.int64)[:, None]
        x2sq = (x2 * x2) & mask
        x2cu = (x2sq * x2) & mask
        lv = (aL * x1 + bL * x2) & mask
        cv = (c0 * x1 + c1 * x2) & mask
        cv = (cv * x1 + c2 * x2sq) & mask
        cv = (cv * x1 + c3 * x2cu) & mask
        count += int(np.count_nonzero(table[lv] & table[cv]))
    return count


def _k_2_scan(
    L: BinaryForm, C: BinaryForm, n_max: int, tol: float
) -> tuple[EulerFactor, list[tuple[int, float]]]:
    history: list[tuple[int, float]] = []
    prev = None
    for n in range(4, n_max + 1):
        count = _dyadic_pair_count(L, C, n)
        est = 4.0 * count / (1 << (2 * n))
        history.append((n, est))
        if prev is not None:
            diff = abs(est - prev)
            if diff < tol:
                factor = EulerFactor(
                    p=2, value=est, truncation_level=n, tail_bound=diff, exact=True
                )
                return factor, history
        prev = est
    diff = abs(history[-1][1] - history[-2][1]) if len(history) > 1 else float("inf")
    factor = EulerFactor(
        p=2, value=history[-1][1], truncation_level=n_max, tail_bound=diff, exact=False
    )
    return factor, history


def k_2(L: BinaryForm, C: BinaryForm, n_max: int = 12, tol: float = 1e-3) -> EulerFactor:
    """Dyadic factor by direct residue enumeration mod 2^n for growing n.

    Returns the first estimate whose change from the previous level is below
    tol (marked exact); if no level up to n_max stabilizes, returns the last
    estimate with exact=False and the last observed change as tail_bound.
    """
    if not 4 <= n_max <= 14:
        raise ValueError(f"n_max must be within [4, 14], got {n_max}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    factor, _ = _k_2_scan(L, C, n_max, tol)
    return factor


@dataclass(frozen=True)
class ConstantReport:
    """The predicted constant with its per-prime factors and diagnostics."""

    instance: str
    volume: float
    prime_cutoff: int
    factors: tuple[EulerFactor, ...]
    product: float
    predicted_constant: float
    diagnostics: dict

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "volume": self.volume,
            "prime_cutoff": self.prime_cutoff,
            "factors": [
                {
                    "p": f.p,
                    "value": f.value,
                    "truncation_level": f.truncation_level,
                    "tail_bound": f.tail_bound,
                    "exact": f.exact,
                }
                for f in self.factors
            ],
            "product": self.product,
            "predicted_constant": self.predicted_constant,
            "diagnostics": self.diagnostics,
        }


def _compensated_product(values: list[float]) -> float:
    """Product accumulated as a compensated sum of logarithms (positive inputs)."""
    if any(v <= 0 for v in values):
        out = 1.0
        for v in values:
            out *= v
        return out
    return math.exp(math.fsum(math.log(v) for v in values))


def predicted_constant(
    inst: ProblemInstance,
    P: int = 10**4,
    V: int = 6,
    n_max: int = 12,
    tol: float = 1e-3,
) -> ConstantReport:
    """Predicted constant pi^2 * vol * prod_{p <= P} K_p for a validated instance.

    Exact factors at p <= SMALL_PRIME_THRESHOLD and at bad primes (truncation
    V there is 4), first-order factors elsewhere.  Factors multiply in fixed
    ascending-p order, so the result is independent of execution schedule.
    """
    if P < 100:
        raise ValueError(f"prime cutoff must be at least 100, got {P}")
    ensure_validated(inst)
    L, C = inst.L, inst.C
    volume = float(region_area(inst.region))
    factor2, history = _k_2_scan(L, C, n_max, tol)
    factors = [factor2]
    bad_primes = []
    for p in sieve_primes(P):
        if p == 2:
            continue
        if p <= SMALL_PRIME_THRESHOLD:
            factors.append(k_p(p, L, C, V))
        elif is_good_prime(p, L, C):
            factors.append(k_p_large(p, L, C))
        else:
            bad_primes.append(p)
            factors.append(k_p(p, L, C, 4))
    factors.sort(key=lambda f: f.p)
    values = [f.value for f in factors]
    product = _compensated_product(values)
    nonpositive = [f.p for f in factors if f.value <= 0]
    cutoffs = [10, 50, 100, 500, 1000, 5000, P]
    partials = []
    running = 1.0
    idx = 0
    for cut in sorted(set(min(c, P) for c in cutoffs)):
        while idx < len(factors) and factors[idx].p <= cut:
            running *= factors[idx].value
            idx += 1
        partials.append([cut, running])
    predicted = math.pi**2 * volume * product
    diagnostics = {
        "partial_products": partials,
        "k2_history": [[n, est] for n, est in history],
        "bad_primes": bad_primes,
        "nonpositive_factors": nonpositive,
    }
    return ConstantReport(
        instance=instance_id(inst),
        volume=volume,
        prime_cutoff=P,
        factors=tuple(factors),
        product=product,
        predicted_constant=predicted,
        diagnostics=diagnostics,
    )
