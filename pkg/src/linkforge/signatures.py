"""Levine-Tristram signatures and their normalised circle integral.

Convention: sigma_V(w) is the signature of (1 - w) V + (1 - conj w) V^T.
With this choice the right-handed trefoil matrix [[-1, 1], [0, -1]] has
sigma(-1) = -2.  The integral rho(V) is taken over the unit circle with
total length normalised to 1; by the symmetry sigma(conj w) = sigma(w) it
equals the average of sigma over the upper half circle.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, pi

import numpy as np

from .laurent import LaurentPoly, determinant, divexact, gcd


class SignatureError(ValueError):
    pass


class AtJump(SignatureError):
    """Raised when the form is (numerically) degenerate at the requested point."""


def seifert_matrix(rows):
    V = np.array(rows, dtype=np.int64).reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=np.int64)
    if V.shape[0] != V.shape[1] or V.shape[0] % 2:
        raise SignatureError("a Seifert matrix must be square of even size")
    if V.size:
        d = round(np.linalg.det((V - V.T).astype(float)))
        if abs(d) != 1:
            raise SignatureError(f"det(V - V^T) = {d}, expected +-1")
    return V


def load_seifert_csv(text):
    rows = [[int(x) for x in line.replace(";", ",").split(",") if x.strip()]
            for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return seifert_matrix(rows)


def lt_signature(V, omega, tol=1e-9):
    V = np.asarray(V, dtype=float)
    if V.size == 0:
        return 0
    if abs(abs(omega) - 1) > 1e-12:
        raise SignatureError("omega must lie on the unit circle")
    if abs(omega - 1) < 1e-15:
        raise SignatureError("omega = 1 is excluded")
    H = (1 - omega) * V + (1 - np.conj(omega)) * V.T
    ev = np.linalg.eigvalsh(H)
    if np.any(np.abs(ev) < tol):
        raise AtJump(f"form is degenerate at omega = {omega}")
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def alexander_from_seifert(V):
    """det(V - t V^T) as a one-variable LaurentPoly (exact)."""
    V = np.asarray(V, dtype=np.int64)
    n = V.shape[0]
    t = LaurentPoly.var(1, 0)
    M = [[LaurentPoly.const(1, int(V[i, j])) - t * int(V[j, i]) for j in range(n)]
         for i in range(n)]
    return determinant(M, 1)


def _squarefree(p):
    """Product of the distinct irreducible factors (simple roots only)."""
    p = p.normalized()
    deriv = LaurentPoly(1, {(e[0] - 1,): c * e[0] for e, c in p.terms.items() if e[0]})
    if not deriv:
        return p
    return divexact(p, gcd(p, deriv)).normalized()


def jump_angles(V, tol=1e-12):
    """Angles in (0, pi) of the unit-circle roots of det(V - t V^T), refined by bisection."""
    V = np.asarray(V, dtype=np.int64)
    if V.size == 0:
        return []
    delta = alexander_from_seifert(V)
    if not delta:
        raise SignatureError("det(V - t V^T) vanishes identically")
    delta = _squarefree(delta)
    lo, coeffs = delta.coeffs_1var()
    deg = lo + len(coeffs) - 1
    mid = (lo + deg) / 2

    def f(theta):
        # e^{-i mid theta} Delta(e^{i theta}) is real up to a constant phase
        z = sum(c * np.exp(1j * (lo + k - mid) * theta) for k, c in enumerate(coeffs))
        return z

    phase = f(1.0)
    phase = phase / abs(phase) if abs(phase) > 0 else 1

    def g(theta):
        return (f(theta) / phase).real

    roots = np.roots(coeffs[::-1])
    angles = []
    for r in roots:
        if abs(abs(r) - 1) < 1e-6:
            a = float(np.angle(r))
            if 1e-12 < a < pi - 1e-12:
                angles.append(a)
    refined = []
    for a in sorted(angles):
        left, right = a - 1e-6, a + 1e-6
        gl, gr = g(left), g(right)
        if gl * gr < 0:
            while right - left > tol:
                m = (left + right) / 2
                if g(left) * g(m) <= 0:
                    right = m
                else:
                    left = m
            a = (left + right) / 2
        # clustered numerical roots of a repeated factor count once
        if not refined or a - refined[-1] > 1e-6:
            refined.append(a)
    return refined


def rho_knot(V, tol=1e-9):
    """Normalised integral of the signature function over the circle."""
    V = np.asarray(V)
    if V.size == 0:
        return 0.0
    cuts = [0.0] + jump_angles(V) + [pi]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        if b - a < 1e-14:
            continue
        theta = (a + b) / 2
        total += (b - a) * lt_signature(V, np.exp(1j * theta), tol=min(tol, 1e-12))
    return total / pi


def block_sum(*mats):
    n = sum(np.asarray(m).shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for m in mats:
        m = np.asarray(m)
        s = m.shape[0]
        out[k:k + s, k:k + s] = m
        k += s
    return out


# --- bookkeeping for the example families -----------------------------------------

@dataclass
class RhoBudget:
    C_X: float
    C_i: list = field(default_factory=list)

    @property
    def R(self):
        return self.C_X + 2 * sum(self.C_i)


def budget_R(C_X, C_list=()):
    if C_X <= 0 or any(c <= 0 for c in C_list):
        raise SignatureError("Cheeger-Gromov bounds must be positive")
    return RhoBudget(C_X, list(C_list))


def choose_Nj(R, count):
    """Minimal integers with N_j > 3R/4 + max(N_k, k < j)."""
    if count < 1:
        raise SignatureError("count must be at least 1")
    R = Fraction(R)
    if R <= 0:
        raise SignatureError("R must be positive")
    step = floor(Fraction(3, 4) * R) + 1
    out = []
    prev = 0
    for _ in range(count):
        prev = step + prev
        out.append(prev)
    return out


# rho of the knot J used in the example families; recorded, not recomputed
RHO_J = Fraction(4, 3)
