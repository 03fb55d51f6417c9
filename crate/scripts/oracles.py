"""Extended-precision reference values for the frozen test constants.

Run with `python3 scripts/oracles.py`; every quantity is computed from the
defining series/products at 50 significant digits, independently of the
Rust implementation.
"""
from mpmath import mp, mpf, mpc, nsum, inf, qp, pi, cos, sqrt, gamma, besselj, findroot

mp.dps = 50


def poch(a, q, k):
    p = mpf(1)
    for j in range(k):
        p *= 1 - a * q**j
    return p


def poch_inf(a, q, n=4000):
    p = mpf(1)
    qj = mpf(1)
    for _ in range(n):
        t = a * qj
        if abs(t) < mpf(10) ** (-60):
            break
        p *= 1 - t
        qj *= q
    return p


def phi11(w, q, z, terms=400):
    s = mpf(0)
    t = mpf(1)
    for k in range(terms):
        s += t
        t *= -(q**k) * z / ((1 - w * q**k) * (1 - q ** (k + 1)))
        if abs(t) < mpf(10) ** (-(mp.dps + 10)) * max(abs(s), 1):
            break
    return s


def phi11_reg(w, q, z, terms=400):
    """(w;q)_inf 1phi1(0;w;q,z) via the entire series."""
    s = mpf(0)
    inf_k = poch_inf(w, q)
    t = mpf(1)
    for k in range(terms):
        p = 1 - w * q**k
        if inf_k == 0 or p == 0:
            inf_k = poch_inf(w * q**k, q)
        s += t * inf_k
        inf_k = inf_k / p if p != 0 else poch_inf(w * q ** (k + 1), q)
        t *= -(q**k) * z / (1 - q ** (k + 1))
        if abs(t) < mpf(10) ** (-(mp.dps + 10)):
            break
    return s


def phi21(a, b, c, q, z, terms=2000):
    s = mpf(0)
    t = mpf(1)
    for k in range(terms):
        s += t
        t *= (1 - a * q**k) * (1 - b * q**k) * z / ((1 - c * q**k) * (1 - q ** (k + 1)))
        if abs(t) < mpf(10) ** (-(mp.dps + 10)) * max(abs(s), 1):
            break
    return s


def hankel_kernel(alpha, j, q):
    """K(j) = q^{j(alpha+1)} / (p;p)_inf * (p^{alpha+1};p)_inf 1phi1(0;p^{alpha+1};p,p^{j+1})."""
    p = q * q
    if j >= 0:
        return q ** (j * (alpha + 1)) / poch_inf(p, p) * phi11_reg(p ** (alpha + 1), p, p ** (j + 1), 200)
    n = -j
    return (-1) ** n * q ** (n * (alpha + 1) + n * (n - 1)) / poch(p, p, n) * phi11(p ** (n + 1), p, p ** (n + alpha + 1), 200)


def exton_kernel(j, z, q):
    """z^j (q^{j+1};q)_inf/(q;q)_inf 1phi1(0;q^{j+1};q,z^2), reduced for j < 0."""
    if j >= 0:
        return z**j / poch(q, q, j) * phi11(q ** (j + 1), q, z * z, 200)
    n = -j
    return (-1) ** n * q ** (n * (n - 1) // 2) * z**n / poch(q, q, n) * phi11(q ** (n + 1), q, q**n * z * z, 200)


def form_first(n, x, y, s, q, terms=300):
    """Regularised first expression of the Graf coefficient (t^n y^n ... 2phi1)."""
    if n >= 0:
        pre = mpf(1)
        for j in range(n):
            pre *= y - x / s * q**j
    else:
        pre = mpf(1)
        for i in range(1, -n + 1):
            pre /= y - x / s * q ** (-i)
    k0 = max(0, -n)
    t = mpf(1)
    for j in range(k0):
        t *= (s * x - y * q**j) * (y - x / s * q ** (n + j))
    t /= poch(q, q, k0) * poch(q, q, n + k0)
    total = mpf(0)
    for k in range(k0, k0 + terms):
        total += t
        t *= (s * x - y * q**k) * (y - x / s * q ** (n + k)) / ((1 - q ** (k + 1)) * (1 - q ** (n + k + 1)))
    return pre * total


def form_second(n, x, y, s, q, terms=300):
    """The mirrored expression: first form at (-n, y, x, s) times s^-n."""
    return form_first(-n, y, x, s, q, terms) * s ** (-n)


def graf_lhs(n, x, y, s, q, K=80):
    return sum(s**k * exton_kernel(n + k, y, q) * exton_kernel(k, x, q) for k in range(-K, K))


def phi21_cont(a, b, c, q, z):
    """2phi1 continued outside the unit disk through the three-term recursion."""
    if abs(z) < mpf("0.5"):
        return phi21(a, b, c, q, z)
    L = 0
    while abs(z * q**L) >= mpf("0.5"):
        L += 1
    u2 = phi21(a, b, c, q, z * q ** (L + 1))
    u1 = phi21(a, b, c, q, z * q**L)
    for l in range(L - 1, -1, -1):
        w = z * q**l
        u0 = (((a + b) * w - c / q - 1) * u1 + (c / q - a * b * w) * u2) / (w - 1)
        u1, u2 = u0, u1
    return u1


def dual_kernel(j, z, q):
    """z^j (z^2;q)_inf/(q;q)_inf 1phi1(0;z^2;q,q^{j+1})."""
    return z**j * phi11_reg(z * z, q, q ** (j + 1)) / poch_inf(q, q)


def symmetric_lhs(n, m, x, y, s, q, K=70):
    return sum(s**k * exton_kernel(n + k, y, q) * exton_kernel(m + k, x, q) for k in range(-K, K))


def symmetric_first(n, m, x, y, s, q):
    pre = s ** (-m) * y ** (n - m) * poch_inf(x / (s * y), q) * poch_inf(y * y, q) / (poch_inf(s * x * y, q) * poch_inf(q, q))
    return pre * phi21_cont(q * s * y / x, s * x * y, y * y, q, q ** (n - m) * x / (s * y))


def symmetric_second(n, m, x, y, s, q):
    return symmetric_first(m, n, y, x, s, q)


def heine_coeff(n, x, y, s, q, terms=300):
    """Coefficient of t^n in the Heine-type expansion, regularised in y."""
    if n >= 0:
        pre = mpf(1)
        for j in range(n):
            pre *= y - x / s * q**j
    else:
        pre = mpf(1)
        for i in range(1, -n + 1):
            pre /= y - x / s * q ** (-i)
    k0 = max(0, -n)
    f = lambda j: -(y - x / s * q ** (n + j)) * (y - s * x * q**j)
    t = mpf(1)
    for j in range(k0):
        t *= f(j)
    t /= poch(q, q, k0) * poch(q, q, n + k0)
    total = mpf(0)
    for k in range(k0, k0 + terms):
        total += t
        t *= f(k) / ((1 - q ** (k + 1)) * (1 - q ** (n + k + 1)))
    return pre * total


def jackson_j1(n, z, q, terms=300):
    """z^n/(q;q)_inf sum_k (q^{n+k+1};q)_inf (-z^2)^k/(q;q)_k, any integer n."""
    s = mpf(0)
    for k in range(max(0, -n), terms):
        s += poch_inf(q ** (n + k + 1), q) * (-z * z) ** k / poch(q, q, k)
    return z**n * s / poch_inf(q, q)


def jackson_j2(n, z, q, terms=120):
    """z^n q^{n(n-1)/2}/(q;q)_inf sum_k q^{k(k-1)} (q^{n+k+1};q)_inf (-q^n z^2)^k/(q;q)_k."""
    s = mpf(0)
    for k in range(max(0, -n), terms):
        s += q ** (k * (k - 1)) * poch_inf(q ** (n + k + 1), q) * (-(q**n) * z * z) ** k / poch(q, q, k)
    return z**n * q ** (n * (n - 1) // 2) * s / poch_inf(q, q)


def b3_lhs(a, b, c, n, q):
    return phi21_cont(a, b, c, q, q ** (n + 1) / a)


def b3_rhs(a, b, c, n, q):
    pre = poch_inf(q * b / a, q) * poch_inf(c / b, q) / (poch_inf(c, q) * poch_inf(q / a, q)) * b ** (-n)
    return pre * phi21_cont(q * b / c, b, q * b / a, q, q ** (-n) * c / b)


if __name__ == "__main__":
    import sys

    which = sys.argv[1:] or ["all"]
    out = {}
    q = mpf("0.5")
    out["poch_inf(0.5;0.5)"] = poch_inf(q, q)
    out["phi11(0;q^1.5;0.25,0.5)"] = phi11(mpf("0.25") ** mpf("1.5"), mpf("0.25"), mpf("0.5"), 60)
    out["majorant(1,1,0.5)"] = poch_inf(-1, q) ** 2
    out["hankel_kernel(0.5;-2;0.5)"] = hankel_kernel(mpf("0.5"), -2, q)
    out["hankel_kernel(0;3;0.5)"] = hankel_kernel(mpf(0), 3, q)
    out["exton_kernel(2;0.4;0.5)"] = exton_kernel(2, mpf("0.4"), q)
    out["dual_kernel(-1;0.4;0.5)"] = dual_kernel(-1, mpf("0.4"), q)
    out["jackson_j1(2;0.7;0.5)"] = jackson_j1(2, mpf("0.7"), q)
    out["jackson_j2(-1;0.7;0.5)"] = jackson_j2(-1, mpf("0.7"), q)
    out["phi21(0.3,0.2;0.7;0.5,0.5)"] = phi21(mpf("0.3"), mpf("0.2"), mpf("0.7"), q, q)
    a, b, c = mpf(2), mpf("0.3"), mpf("0.7")
    out["b3_lhs(2,0.3,0.7;n=1)"] = b3_lhs(a, b, c, 1, q)
    out["b3_rhs(2,0.3,0.7;n=1)"] = b3_rhs(a, b, c, 1, q)
    for k, v in out.items():
        print(f"{k} = {mp.nstr(v, 20)}")
