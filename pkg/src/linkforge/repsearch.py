"""Representations of finitely presented groups into SL(2, F_p).

Group elements are indexed once per prime so that products, inverses and
conjugates become table lookups.  The search assigns a few "seed"
generators by brute force and lets the crossing relators

    x_o^s x_u x_o^-s x_v^-1

determine the rest: knowing ``o`` and one of ``u``, ``v`` fixes the other.
Relators of any other shape are only checked once all of their generators
carry values.
"""
import itertools
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache

from . import fpgroup
from .wirtinger import conjugation_shape


class SearchError(ValueError):
    pass


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class FpMatrix2:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c) % self.p != 1:
            raise SearchError(f"determinant of {self.rows()} is not 1 mod {self.p}")

    @classmethod
    def from_rows(cls, rows, p):
        (a, b), (c, d) = rows
        return cls(a % p, b % p, c % p, d % p, p)

    @classmethod
    def identity(cls, p):
        return cls(1, 0, 0, 1, p)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, o):
        p = self.p
        return FpMatrix2((self.a * o.a + self.b * o.c) % p, (self.a * o.b + self.b * o.d) % p,
                         (self.c * o.a + self.d * o.c) % p, (self.c * o.b + self.d * o.d) % p, p)

    def inverse(self):
        p = self.p
        return FpMatrix2(self.d, -self.b % p, -self.c % p, self.a, p)

    def is_identity(self):
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def det(self):
        return (self.a * self.d - self.b * self.c) % self.p

    def key(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def enumerate_sl2(p):
    if not is_prime(p):
        raise SearchError(f"{p} is not prime")
    out = []
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p == 1:
            out.append(FpMatrix2(a, b, c, d, p))
    return out


class GroupTable:
    """Multiplication, inverse and conjugation tables of SL(2, F_p)."""

    def __init__(self, p):
        self.p = p
        self.elements = enumerate_sl2(p)
        self.index = {m.key(): i for i, m in enumerate(self.elements)}
        n = len(self.elements)
        els = self.elements
        self.mul = [[self.index[(x * y).key()] for y in els] for x in els]
        self.inv = [self.index[x.inverse().key()] for x in els]
        self.identity = self.index[(1, 0, 0, 1)]
        # conj[g][h] = g h g^-1
        self.conj = [[self.mul[self.mul[g][h]][self.inv[g]] for h in range(n)]
                     for g in range(n)]

    def __len__(self):
        return len(self.elements)

    def evaluate(self, word, assign):
        r = self.identity
        mul, inv = self.mul, self.inv
        for a in word:
            g = assign[abs(a)]
            r = mul[r][g if a > 0 else inv[g]]
        return r

    def class_representatives(self):
        seen = set()
        reps = []
        for h in range(len(self)):
            if h in seen:
                continue
            reps.append(h)
            seen.update(self.conj[g][h] for g in range(len(self)))
        return reps


@lru_cache(maxsize=8)
def group_table(p):
    return GroupTable(p)


# --- constraint system -------------------------------------------------------------

class _System:
    """Relators of a presentation sorted into propagating and checking constraints."""

    def __init__(self, P):
        self.n = P.generator_count
        self.conj = []      # (o, u, v, s): v = o^s u o^-s
        self.equal = []     # (a, b): a = b
        self.check = []     # (word, generators)
        for r in P.relators:
            if not r:
                continue
            shape = conjugation_shape(r)
            if shape:
                self.conj.append(shape)
            elif len(r) == 2 and r[0] * r[1] < 0:
                self.equal.append((abs(r[0]), abs(r[1])))
            elif len(r) == 1:
                self.check.append((r, {abs(r[0])}))
            else:
                self.check.append((tuple(r), {abs(a) for a in r}))
        self.touch = {g: [] for g in range(1, self.n + 1)}
        for i, (o, u, v, s) in enumerate(self.conj):
            for g in {o, u, v}:
                self.touch[g].append(("c", i))
        for i, (a, b) in enumerate(self.equal):
            self.touch[a].append(("e", i))
            self.touch[b].append(("e", i))
        for i, (w, gens) in enumerate(self.check):
            for g in gens:
                self.touch[g].append(("k", i))

    def propagate(self, T, assign, changed):
        """Extend ``assign`` (a dict) in place; return False on contradiction."""
        queue = list(changed)
        conj, mul, inv = T.conj, T.mul, T.inv
        while queue:
            g = queue.pop()
            for kind, i in self.touch[g]:
                if kind == "c":
                    o, u, v, s = self.conj[i]
                    xo = assign.get(o)
                    if xo is None:
                        continue
                    c = xo if s > 0 else inv[xo]
                    xu, xv = assign.get(u), assign.get(v)
                    if xu is not None:
                        want = conj[c][xu]
                        if xv is None:
                            assign[v] = want
                            queue.append(v)
                        elif xv != want:
                            return False
                    elif xv is not None:
                        assign[u] = conj[inv[c]][xv]
                        queue.append(u)
                elif kind == "e":
                    a, b = self.equal[i]
                    xa, xb = assign.get(a), assign.get(b)
                    if xa is None and xb is not None:
                        assign[a] = xb
                        queue.append(a)
                    elif xb is None and xa is not None:
                        assign[b] = xa
                        queue.append(b)
                    elif xa != xb:
                        return False
                else:
                    w, gens = self.check[i]
                    if all(h in assign for h in gens):
                        r = T.identity
                        for a in w:
                            x = assign[abs(a)]
                            r = mul[r][x if a > 0 else inv[x]]
                        if r != T.identity:
                            return False
        return True

    def gain(self, assign, g):
        """How many generators become determined if ``g`` is assigned next."""
        trial = dict.fromkeys(assign, 0)
        trial[g] = 0
        queue = [g]
        while queue:
            h = queue.pop()
            for kind, i in self.touch[h]:
                if kind == "c":
                    o, u, v, _ = self.conj[i]
                    if o in trial and (u in trial) != (v in trial):
                        nxt = v if u in trial else u
                        trial[nxt] = 0
                        queue.append(nxt)
                elif kind == "e":
                    a, b = self.equal[i]
                    if (a in trial) != (b in trial):
                        nxt = b if a in trial else a
                        trial[nxt] = 0
                        queue.append(nxt)
        return len(trial) - len(assign)

    def pick(self, assign):
        best, best_gain = None, -1
        for g in range(1, self.n + 1):
            if g in assign:
                continue
            k = self.gain(assign, g)
            if k > best_gain:
                best, best_gain = g, k
        return best


def propagate(P, partial, p):
    """Close a partial assignment (generator -> FpMatrix2) under the relators.

    Returns the extended assignment, or None on a contradiction.
    """
    T = group_table(p)
    S = _System(P)
    assign = {g: T.index[m.key()] for g, m in partial.items()}
    if not S.propagate(T, assign, list(assign)):
        return None
    return {g: T.elements[i] for g, i in sorted(assign.items())}


@dataclass
class SearchConfig:
    p: int = 5
    max_solutions: int = None
    seed_order: str = "greedy"
    worker_count: int = 1


def _seed_plan(S):
    """Fixed seed order: greedy choice, re-evaluated after each propagation."""
    assign = {}
    order = []
    while len(assign) < S.n:
        g = S.pick(assign)
        order.append(g)
        assign[g] = 0
        queue = [g]
        while queue:
            h = queue.pop()
            for kind, i in S.touch[h]:
                if kind == "c":
                    o, u, v, _ = S.conj[i]
                    if o in assign and (u in assign) != (v in assign):
                        nxt = v if u in assign else u
                        assign[nxt] = 0
                        queue.append(nxt)
                elif kind == "e":
                    a, b = S.equal[i]
                    if (a in assign) != (b in assign):
                        nxt = b if a in assign else a
                        assign[nxt] = 0
                        queue.append(nxt)
    return order


def _dfs(S, T, order, assign, depth, extra, sink, limit):
    if limit is not None and len(sink) >= limit:
        return
    while depth < len(order) and order[depth] in assign:
        depth += 1
    if depth == len(order):
        sol = tuple(assign[g] for g in range(1, S.n + 1))
        if extra is None or extra(sol):
            sink.append(sol)
        return
    g = order[depth]
    for val in range(len(T)):
        trial = dict(assign)
        trial[g] = val
        if S.propagate(T, trial, [g]):
            _dfs(S, T, order, trial, depth + 1, extra, sink, limit)
            if limit is not None and len(sink) >= limit:
                return


def _worker(args):
    P, p, order, first_values, word, limit = args
    T = group_table(p)
    S = _System(P)
    extra = _nontrivial_test(T, word) if word else None
    sink = []
    g = order[0]
    for val in first_values:
        assign = {g: val}
        if S.propagate(T, assign, [g]):
            _dfs(S, T, order, assign, 1, extra, sink, limit)
        if limit is not None and len(sink) >= limit:
            break
    return sink


def _nontrivial_test(T, word):
    def test(sol):
        return T.evaluate(word, (None,) + sol) != T.identity
    return test


def _run(P, cfg, word=None, reps_only=False):
    if not is_prime(cfg.p):
        raise SearchError(f"{cfg.p} is not prime")
    if cfg.worker_count < 1:
        raise SearchError("worker_count must be at least 1")
    T = group_table(cfg.p)
    S = _System(P)
    if S.n == 0:
        ok = all(not w for w, _ in S.check)
        return [()] if ok and not word else []
    order = _seed_plan(S)
    # conjugation preserves solutions, so the first seed only needs class representatives
    firsts = T.class_representatives()
    limit = cfg.max_solutions
    chunks = [firsts[i::cfg.worker_count] for i in range(cfg.worker_count)]
    jobs = [(P, cfg.p, order, ch, word, limit) for ch in chunks if ch]
    if cfg.worker_count > 1:
        with multiprocessing.get_context("fork").Pool(cfg.worker_count) as pool:
            parts = pool.map(_worker, jobs)
    else:
        parts = [_worker(j) for j in jobs]
    found = sorted({s for part in parts for s in part})
    if reps_only:
        return found[:limit] if limit else found
    # every solution is conjugate to one whose first seed is a class representative
    full = set()
    for sol in found:
        for h in range(len(T)):
            full.add(tuple(T.conj[h][x] for x in sol))
    out = sorted(full)
    return out[:limit] if limit else out


def search(P, cfg=None):
    """All representations as lists of FpMatrix2 in generator order (sorted)."""
    cfg = cfg or SearchConfig()
    T = group_table(cfg.p)
    for sol in _run(P, cfg):
        yield [T.elements[i] for i in sol]


def count_solutions(P, cfg=None):
    cfg = cfg or SearchConfig()
    return len(_run(P, cfg))


def witness_nontrivial(P, word, cfg=None):
    """First representation (in canonical order) sending ``word`` off the identity."""
    cfg = cfg or SearchConfig()
    word = fpgroup.free_reduce(word)
    if not word:
        return None
    one = SearchConfig(cfg.p, 1, cfg.seed_order, cfg.worker_count)
    found = _run(P, one, word=word, reps_only=True)
    if not found:
        return None
    T = group_table(cfg.p)
    sol = [T.elements[i] for i in found[0]]
    return sol, fpgroup.evaluate(word, [None] + sol, FpMatrix2.identity(cfg.p))


def verify(P, assignment):
    """(ok, failing relator indices) for a total assignment of matrices."""
    if len(assignment) != P.generator_count:
        raise SearchError(f"assignment has {len(assignment)} matrices, "
                          f"presentation has {P.generator_count} generators")
    p = assignment[0].p if assignment else 2
    images = [None] + list(assignment)
    bad = [i for i, r in enumerate(P.relators)
           if not fpgroup.evaluate(r, images, FpMatrix2.identity(p)).is_identity()]
    return not bad, bad


def brute_force(P, p):
    """Exhaustive oracle over all assignments; only for tiny presentations."""
    T = group_table(p)
    out = []
    for sol in itertools.product(range(len(T)), repeat=P.generator_count):
        images = (None,) + sol
        if all(T.evaluate(r, images) == T.identity for r in P.relators):
            out.append(sol)
    return [[T.elements[i] for i in s] for s in out]


def matrices_to_json(sol):
    return [m.rows() for m in sol]


def matrices_from_json(data, p):
    return [FpMatrix2.from_rows(rows, p) for rows in data]
