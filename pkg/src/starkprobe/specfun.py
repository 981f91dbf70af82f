"""Complex special functions used by the analytic spectra.

Everything here is scalar, pure and thread-safe.  Branch conventions:
Lambert W follows the standard multivalued indexing (branch 0 real on
z >= -1/e); the Tricomi U and exponential integrals use the principal
branch with the cut along the negative real axis.
"""

from __future__ import annotations

import cmath
import math

EULER_GAMMA = 0.5772156649015328606

_SERIES_RTOL = 1e-15      # relative term cutoff for all power series
_SERIES_MAX_TERMS = 10000


class ConvergenceError(ArithmeticError):
    """Iteration or series failed to converge; message carries diagnostics."""


def _check_finite(value: complex, where: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConvergenceError(f"{where}: non-finite result {value!r}")
    return value


# ---------------------------------------------------------------------------
# Lambert W

def _lambert_seed(branch: int, z: complex) -> complex:
    if branch == 0 and abs(z) < 0.3:
        # Taylor about 0
        return z*(1.0 - z + 1.5*z*z)
    if branch in (0, -1) and abs(z + 1.0/math.e) < 0.25:
        # series about the branch point, p = +-sqrt(2(e z + 1))
        p = cmath.sqrt(2.0*(math.e*z + 1.0))
        if branch == -1:
            p = -p
        return -1.0 + p - p*p/3.0 + 11.0*p**3/72.0
    if branch == 0 and abs(z) < 4.0:
        return cmath.log(1.0 + z)   # principal-branch mid-range seed
    ln1 = cmath.log(z) + 2j*math.pi*branch
    if abs(ln1) < 1e-8:
        return z
    return ln1 - cmath.log(ln1)


def _branch_index(w: complex, z: complex) -> int:
    # w e^w = z implies w + log w - Log z in 2*pi*i*Z
    return round((w + cmath.log(w) - cmath.log(z)).imag/(2.0*math.pi))


def lambert_w(branch: int, z: complex, tol: float = 1e-14) -> complex:
    """Lambert W on the given branch, Halley iteration.

    Residual |w e^w - z| <= 1e-12 max(1, |z|) is guaranteed or a
    ConvergenceError is raised with the last residual.
    """
    z = complex(z)
    if z == 0:
        if branch == 0:
            return 0j
        raise ValueError(f"W_{branch}(0) diverges")
    w = _lambert_seed(branch, z)
    for attempt in range(4):
        for _ in range(80):
            ew = cmath.exp(w)
            f = w*ew - z
            if f == 0:
                break
            df = ew*(w + 1.0)
            step = f/(df - f*(w + 2.0)/(2.0*(w + 1.0)))
            w -= step
            if abs(step) <= tol*max(1.0, abs(w)):
                break
        if branch in (0, -1) and abs(w + 1.0) < 1e-6:
            break  # branch point w = -1 shared by branches 0 and -1
        if _branch_index(w, z) == branch:
            break
        # converged onto a neighbouring branch: shift and retry
        w += 2j*math.pi*(branch - _branch_index(w, z))
    residual = abs(w*cmath.exp(w) - z)
    if residual > 1e-12*max(1.0, abs(z)):
        raise ConvergenceError(
            f"lambert_w(branch={branch}, z={z!r}) residual {residual:.3e}")
    return _check_finite(w, "lambert_w")


def lambert_w_log(branch: int, log_z: complex, tol: float = 1e-14) -> complex:
    """Lambert W of exp(log_z); safe when exp(log_z) would overflow."""
    ln1 = log_z + 2j*math.pi*branch
    w = ln1 - cmath.log(ln1)
    for _ in range(200):
        # solve w + log w = ln1
        step = (w + cmath.log(w) - ln1)/(1.0 + 1.0/w)
        w -= step
        if abs(step) <= tol*max(1.0, abs(w)):
            return _check_finite(w, "lambert_w_log")
    raise ConvergenceError(f"lambert_w_log(branch={branch}) no convergence")


# ---------------------------------------------------------------------------
# Complete elliptic integral of the first kind, modulus convention K(k)

def elliptic_k(k: float) -> float:
    """K(k) by the arithmetic-geometric mean; k is the modulus, not m=k^2."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"elliptic_k requires 0 <= k < 1, got {k}")
    kp2 = (1.0 - k)*(1.0 + k)
    if kp2 < 1e-12:
        # K(k) ~ ln(4/k') as k -> 1
        return math.log(4.0/math.sqrt(kp2))
    a, b = 1.0, math.sqrt(kp2)
    for _ in range(60):
        if abs(a - b) <= 2e-16*a:
            break
        a, b = 0.5*(a + b), math.sqrt(a*b)
    return math.pi/(2.0*a)


# ---------------------------------------------------------------------------
# Confluent hypergeometric 1F1 (Kummer M)

def hyp1f1(a: complex, b: complex, z: complex) -> complex:
    """1F1(a; b; z) by Taylor series, Kummer-transformed for Re z < 0."""
    a, b, z = complex(a), complex(b), complex(z)
    if b.imag == 0 and b.real <= 0 and b.real == round(b.real):
        raise ValueError(f"hyp1f1 pole: b={b} is a non-positive integer")
    if z.real < 0:
        # 1F1(a;b;z) = e^z 1F1(b-a;b;-z), avoids alternating cancellation
        return cmath.exp(z)*_hyp1f1_series(b - a, b, -z)
    return _hyp1f1_series(a, b, z)


def _hyp1f1_series(a: complex, b: complex, z: complex) -> complex:
    total = term = 1.0 + 0j
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n)/(b + n)*z/(n + 1)
        total += term
        if abs(term) < _SERIES_RTOL*abs(total):
            return _check_finite(total, "hyp1f1")
    raise ConvergenceError(
        f"hyp1f1({a},{b},{z}): {_SERIES_MAX_TERMS} terms, last |term|={abs(term):.3e}")


# ---------------------------------------------------------------------------
# Digamma (needed by the logarithmic Kummer U series)

def digamma(z: complex) -> complex:
    """psi(z) for complex z, recurrence plus asymptotic series."""
    z = complex(z)
    if z.imag == 0 and z.real == round(z.real) and z.real <= 0:
        raise ValueError(f"digamma pole at {z}")
    shift = 0j
    while z.real < 12.0:
        shift -= 1.0/z
        z += 1.0
    inv = 1.0/z
    inv2 = inv*inv
    tail = inv2*(1/12.0 - inv2*(1/120.0 - inv2*(1/252.0 - inv2*(1/240.0 - inv2/132.0))))
    return shift + cmath.log(z) - 0.5*inv - tail


def _gamma(z: complex) -> complex:
    # Lanczos, g = 7
    coeff = (0.99999999999980993, 676.5203681218851, -1259.1392167224028,
             771.32342877765313, -176.61502916214059, 12.507343278686905,
             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7)
    z = complex(z)
    if z.real < 0.5:
        return math.pi/(cmath.sin(math.pi*z)*_gamma(1.0 - z))
    z -= 1.0
    x = coeff[0] + sum(c/(z + i) for i, c in enumerate(coeff[1:], start=1))
    t = z + 7.5
    return math.sqrt(2.0*math.pi)*t**(z + 0.5)*cmath.exp(-t)*x


def _recip_gamma(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real == round(z.real) and z.real <= 0:
        return 0j  # 1/Gamma at the poles
    return 1.0/_gamma(z)


# ---------------------------------------------------------------------------
# Tricomi (Kummer) U

def kummer_u(a: complex, b: complex, z: complex) -> complex:
    """Tricomi U(a, b, z) for integer b >= 1, principal branch.

    Integer b is the only case the spectra need (U(n, n, x) and the
    asymptotic tails); the logarithmic series DLMF 13.2.9 covers moderate
    |z| on any ray off the cut, the 2F0 asymptotic series covers large |z|.
    """
    a, z = complex(a), complex(z)
    if z == 0:
        raise ValueError("kummer_u: z = 0 is a branch point")
    n_b = complex(b)
    if n_b.imag != 0 or n_b.real != round(n_b.real) or n_b.real < 1:
        raise ValueError(f"kummer_u implemented for integer b >= 1, got {b}")
    if abs(z) > 38.0 + 2.0*abs(a):
        return _kummer_u_asymptotic(a, n_b.real, z)
    return _kummer_u_logseries(a, int(n_b.real), z)


def _kummer_u_asymptotic(a: complex, b: float, z: complex) -> complex:
    # U ~ z^-a 2F0(a, a-b+1; ; -1/z), truncated at the smallest term
    total = term = 1.0 + 0j
    best = abs(term)
    out = total
    for k in range(1, 400):
        term *= (a + k - 1.0)*(a - b + k)/(-z*k)
        if abs(term) > best:
            break
        total += term
        best, out = abs(term), total
        if abs(term) < _SERIES_RTOL*abs(total):
            break
    return _check_finite(out*z**(-a), "kummer_u")


def _kummer_u_logseries(a: complex, b: int, z: complex) -> complex:
    n = b - 1
    log_z = cmath.log(z)
    rg_an = _recip_gamma(a - n)
    total = 0j
    if rg_an != 0:
        s = 0j
        poch_a, poch_b, fact, zk = 1.0 + 0j, 1.0, 1.0, 1.0 + 0j
        for k in range(_SERIES_MAX_TERMS):
            term = poch_a/(poch_b*fact)*zk*(log_z + digamma(a + k)
                                            - digamma(1.0 + k) - digamma(n + 1.0 + k))
            s += term
            if k > 3 and abs(term) < _SERIES_RTOL*abs(s):
                break
            poch_a *= a + k
            poch_b *= n + 1 + k
            fact *= k + 1
            zk *= z
        else:
            raise ConvergenceError(f"kummer_u({a},{b},{z}): log series stalled")
        total += (-1.0)**(n + 1)/math.factorial(n)*rg_an*s
    if n >= 1:
        rg_a = _recip_gamma(a)
        if rg_a != 0:
            s = 0j
            poch, poch_low, fact, zk = 1.0 + 0j, 1.0, 1.0, 1.0 + 0j
            for k in range(n):
                s += poch/(poch_low*fact)*zk
                poch *= a - n + k
                if k < n - 1:
                    poch_low *= 1 - n + k
                fact *= k + 1
                zk *= z
            total += math.factorial(n - 1)*rg_a*z**(-n)*s
    return _check_finite(total, "kummer_u")


# ---------------------------------------------------------------------------
# Exponential integrals E_n

def expint_en(n: int, z: complex) -> complex:
    """E_n(z) = int_1^inf e^(-z t)/t^n dt, analytically continued.

    Principal branch; the cut of the continuation lies along the negative
    real axis (approach it with a small imaginary part to pick a side).
    """
    if n < 0:
        raise ValueError("expint_en requires n >= 0")
    z = complex(z)
    if z == 0:
        if n >= 2:
            return complex(1.0/(n - 1))
        raise ValueError(f"E_{n}(0) diverges")
    if z.imag == 0 and z.real < 0:
        raise ValueError(
            "expint_en: argument on the negative real axis is on the branch "
            "cut; offset it by a small imaginary part to choose a side")
    if n == 0:
        return cmath.exp(-z)/z
    return cmath.exp(-z)*expint_scaled(n, z)


def expint_scaled(n: int, z: complex) -> complex:
    """e^z E_n(z) without the exponential over/underflow, n >= 1."""
    z = complex(z)
    if z == 0 and n >= 2:
        return complex(1.0/(n - 1))
    if abs(z) <= (6.0 if z.real > 0 else 12.0):
        # the series cancellation grows like e^|Re z| on the right half
        # plane, so hand over to the fraction earlier there
        return _expint_scaled_series(n, z)
    try:
        return _expint_scaled_cf(n, z)
    except ConvergenceError:
        # near the branch cut the fraction stalls; the scaled series covers
        # moderate |z|, the asymptotic tail the rest (its exponentially small
        # branch term is below double precision for n << |z|/log|z|).
        if abs(z) <= 200.0:
            return _expint_scaled_series(n, z)
        return _expint_scaled_asymptotic(n, z)


def _expint_scaled_series(n: int, z: complex) -> complex:
    # DLMF 8.19.8 with e^z folded into every term; stable near the cut
    # because the dominant terms do not alternate there.
    psi_n = -EULER_GAMMA + sum(1.0/k for k in range(1, n))
    term = cmath.exp(z)  # e^z (-z)^k / k!, k = 0
    s = 0j
    log_part = 0j
    kmax = n + int(abs(z)) + 45 + int(8.0*math.sqrt(abs(z)))
    for k in range(kmax):
        if k == n - 1:
            log_part = term*(psi_n - cmath.log(z))
        else:
            s += term/(1.0 - n + k)
        term *= -z/(k + 1)
    return _check_finite(log_part - s, "expint_scaled")


def _expint_scaled_asymptotic(n: int, z: complex) -> complex:
    # e^z E_n(z) ~ (1/z) sum_k (-1)^k (n)_k / z^k, truncated at the smallest term
    total = term = 1.0 + 0j
    best, out = abs(term), total
    for k in range(1, 400):
        term *= -(n + k - 1.0)/z
        if abs(term) > best:
            break
        total += term
        best, out = abs(term), total
        if abs(term) < _SERIES_RTOL*abs(total):
            break
    return _check_finite(out/z, "expint_scaled")


def _expint_scaled_cf(n: int, z: complex) -> complex:
    # Lentz continued fraction for e^z E_n(z); fails near the cut, in which
    # case the caller falls back to the series.
    b = z + n
    tiny = 1e-300
    c, d, h = 1.0/tiny, 1.0/b, 1.0/b
    for i in range(1, 3000):
        a = -i*(n - 1.0 + i)
        b += 2.0
        d = 1.0/(a*d + b)
        c = b + a/c
        if c == 0:
            c = tiny
        if d == 0:
            d = tiny
        delta = c*d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return _check_finite(h, "expint_scaled")
    raise ConvergenceError(f"expint_scaled({n},{z}): continued fraction stalled")


# ---------------------------------------------------------------------------
# Laguerre polynomials

def laguerre(n: int, x: complex) -> complex:
    """L_n(x) by the stable three-term recurrence."""
    if n < 0:
        raise ValueError("laguerre requires n >= 0")
    x = complex(x)
    if n == 0:
        return 1.0 + 0j
    prev, cur = 1.0 + 0j, 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2*k + 1 - x)*cur - k*prev)/(k + 1)
    return cur
