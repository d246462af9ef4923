"""Multivariate Laurent polynomials with integer coefficients.

Polynomials are stored sparsely as a dict from exponent tuples to nonzero
integers.  Everything needed for Alexander-type computations lives here:
ring arithmetic, exact division, a recursive gcd over Z[t1, ..., tm] and a
fraction-free determinant.

Two polynomials that differ by a unit (``+-t1^a1 ... tm^am``) are compared
with :meth:`LaurentPoly.unit_equal`, which reduces both to the canonical
unit-normal form returned by :meth:`LaurentPoly.normalized`.
"""
from math import gcd as igcd


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if clean[exp] == 0:
                        del clean[exp]
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def var(cls, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def from_coeffs(cls, coeffs, low=0):
        """One-variable polynomial ``sum coeffs[k] * t^(low + k)``."""
        return cls(1, {(low + k,): c for k, c in enumerate(coeffs) if c})

    # -- basic protocol ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return _raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly(self.nvars, {tuple(-a * -n for a in e): c ** -n})
        result = LaurentPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.to_str()!r})"

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = ["t"] if self.nvars == 1 else [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str

    # -- structure ----------------------------------------------------------
    def leading(self):
        """Lex-largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self):
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self):
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exp):
        return _raw(self.nvars, {tuple(a + b for a, b in zip(e, exp)): c
                                 for e, c in self.terms.items()})

    def normalized(self):
        """Canonical representative of the unit class.

        Each variable's minimum exponent is shifted to 0 and the sign is
        fixed so that the lex-leading coefficient is positive.
        """
        if not self.terms:
            return self
        p = self.shift(tuple(-m for m in self.min_exponents()))
        if p.leading()[1] < 0:
            p = -p
        return p

    def unit_equal(self, other):
        return self.normalized() == other.normalized()

    def content(self):
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
        return g

    # -- evaluation / substitution -------------------------------------------
    def __call__(self, *values):
        if len(values) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, a in zip(values, e):
                term = term * (v ** a if a >= 0 else 1 / v ** (-a))
            total += term
        return total

    def substitute_one(self, i, value):
        """Set variable ``i`` to the integer ``value`` (must be +-1) and drop it."""
        if value not in (1, -1):
            raise ValueError("only +-1 can be substituted exactly")
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * value ** (e[i] % 2)
        return LaurentPoly(self.nvars - 1, out)

    def collapse(self):
        """Substitute every variable by a single variable t."""
        out = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(1, out)

    def remap(self, nvars, mapping):
        """Move variable ``i`` to position ``mapping[i]`` in a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, a in enumerate(e):
                ne[mapping[i]] += a
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return LaurentPoly(nvars, out)

    def inverted(self):
        """The image under t_i -> t_i^{-1} for every i."""
        return _raw(self.nvars, {tuple(-a for a in e): c for e, c in self.terms.items()})

    def coeffs_1var(self):
        """(low exponent, dense coefficient list) of a one-variable polynomial."""
        if self.nvars != 1:
            raise ValueError("not a one-variable polynomial")
        if not self.terms:
            return 0, []
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        return lo, [self.terms.get((k,), 0) for k in range(lo, hi + 1)]

    # -- serialization -----------------------------------------------------
    def to_json(self):
        return [{"exponents": list(e), "coeff": c} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, {tuple(d["exponents"]): d["coeff"] for d in data})


def _raw(nvars, terms):
    p = LaurentPoly.__new__(LaurentPoly)
    p.nvars = nvars
    p.terms = terms
    return p


# --- exact division -------------------------------------------------------

class NotDivisible(ArithmeticError):
    pass


def _poly_divexact(a, b):
    """Exact division of polynomial dicts (nonnegative exponents) using lex order."""
    q = {}
    r = dict(a)
    lb = max(b)
    cb = b[lb]
    while r:
        la = max(r)
        ca = r[la]
        d = tuple(x - y for x, y in zip(la, lb))
        if min(d) < 0 or ca % cb:
            raise NotDivisible
        f = ca // cb
        q[d] = f
        for e, c in b.items():
            k = tuple(x + y for x, y in zip(e, d))
            v = r.get(k, 0) - f * c
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return q


def divexact(a, b):
    """Return a / b, raising :class:`NotDivisible` unless b divides a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    ma, mb = a.min_exponents(), b.min_exponents()
    A = a.shift(tuple(-x for x in ma)).terms
    B = b.shift(tuple(-x for x in mb)).terms
    q = _poly_divexact(A, B)
    return _raw(a.nvars, q).shift(tuple(x - y for x, y in zip(ma, mb)))


def divides(b, a):
    try:
        divexact(a, b)
    except NotDivisible:
        return False
    return True


# --- gcd --------------------------------------------------------------------
# Polynomials in the recursion are dicts over nonnegative exponent tuples.
# The last variable is the main variable; coefficients live in one fewer
# variables.

def _split(p):
    out = {}
    for e, c in p.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _join(parts):
    out = {}
    for d, coeff in parts.items():
        for e, c in coeff.items():
            out[e + (d,)] = c
    return out


def _mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _sub(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _sign_normalize(p):
    if p and p[max(p)] < 0:
        return {e: -c for e, c in p.items()}
    return p


def _content(p, nv):
    """gcd of the coefficients of p viewed in its main variable."""
    g = {}
    for coeff in _split(p).values():
        g = _gcd(g, coeff, nv - 1)
        if nv - 1 == 0 and g == {(): 1}:
            break
    return g


def _prem(a, b):
    """Pseudo-remainder of univariate polys given as {deg: coeff dict}."""
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new = {}
        for d, c in r.items():
            if d != dr:
                new[d] = _mul(c, lcb)
        for d, c in b.items():
            if d == db:
                continue
            k = d + dr - db
            v = _sub(new.get(k, {}), _mul(c, lcr))
            if v:
                new[k] = v
            else:
                new.pop(k, None)
        r = {d: c for d, c in new.items() if c}
    return r


def _gcd(a, b, nv):
    if not a:
        return _sign_normalize(b)
    if not b:
        return _sign_normalize(a)
    if nv == 0:
        return {(): igcd(a[()], b[()])}
    ca, cb = _content(a, nv), _content(b, nv)
    c = _gcd(ca, cb, nv - 1)
    pa = _split(_divexact_raw(a, ca, nv))
    pb = _split(_divexact_raw(b, cb, nv))
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        pa = pb
        if not r:
            pb = {}
            break
        rr = _join(r)
        pb = _split(_divexact_raw(rr, _content(rr, nv), nv))
    g = _join(pa)
    g = _divexact_raw(g, _content(g, nv), nv)
    lift = {e + (0,): v for e, v in c.items()}
    return _sign_normalize(_mul(g, lift))


def _divexact_raw(a, b, nv):
    """Divide a (nv vars) by b, where b has nv or nv-1 variables."""
    if b and len(next(iter(b))) == nv - 1:
        b = {e + (0,): c for e, c in b.items()}
    return _poly_divexact(a, b)


def gcd(a, b):
    """Greatest common divisor up to units, in canonical normal form."""
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    nv = a.nvars
    A = a.normalized().terms
    B = b.normalized().terms
    if nv == 0:
        return LaurentPoly(0, {(): igcd(A[()], B[()])})
    return LaurentPoly(nv, _gcd(A, B, nv)).normalized()


def gcd_list(polys):
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    g = LaurentPoly(polys[0].nvars)
    for p in polys:
        g = gcd(g, p)
        if g.nvars and len(g.terms) == 1 and abs(next(iter(g.terms.values()))) == 1:
            break
    return g


# --- determinants -----------------------------------------------------------

def determinant(matrix, nvars):
    """Bareiss fraction-free determinant of a square matrix of LaurentPolys."""
    n = len(matrix)
    if n == 0:
        return LaurentPoly.const(nvars, 1)
    M = [list(row) for row in matrix]
    sign = 1
    prev = LaurentPoly.const(nvars, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly(nvars)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = divexact(num, prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det
