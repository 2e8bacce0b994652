"""Independent reference implementations used only by the tests.

Everything here enumerates exhaustively and shares no code with the package
beyond the data types.
"""

from itertools import combinations, product

from ewsat.boolfun import CONST0, CONST1


def table_value(f, bits):
    idx = sum(1 << j for j, b in enumerate(bits) if b)
    return (f.table >> idx) & 1


def apply_map(f, m, s):
    """Truth table (as a list) of f with argument map m, over s target arguments."""
    out = []
    for x in range(1 << s):
        xs = [(x >> i) & 1 for i in range(s)]
        bits = [0 if e == CONST0 else 1 if e == CONST1 else xs[e - 1] for e in m]
        out.append(table_value(f, bits))
    return out


def first_restriction(f, g, allow_const1=True, surjective=True):
    choices = list(range(1, g.arity + 1)) + [CONST0] + ([CONST1] if allow_const1 else [])
    want = [(g.table >> x) & 1 for x in range(1 << g.arity)]
    for m in product(choices, repeat=f.arity):
        if surjective and set(range(1, g.arity + 1)) - set(m):
            continue
        if apply_map(f, m, g.arity) == want:
            return m
    return None


def assignments(n):
    return range(1 << n)


def popcount(a):
    return bin(a).count("1")


def solutions(phi, k):
    return [a for a in assignments(phi.n) if popcount(a) == k and phi(a)]


def feasible(phi, k):
    return any(popcount(a) == k and phi(a) for a in assignments(phi.n))


def minimal_extensions_oracle(phi, a, k):
    sat = [b for b in assignments(phi.n) if b & a == a and popcount(b) <= k and phi(b)]
    return {b for b in sat if not any(c != b and c & b == c for c in sat)}


def closed_sets(n, arcs):
    for S in range(1 << n):
        if all(not (S >> u) & 1 or (S >> v) & 1 for u, v in arcs):
            yield S


def wdi_feasible(inst):
    for S in closed_sets(inst.n, inst.arcs):
        if sum(inst.weights[v] for v in range(inst.n) if (S >> v) & 1) == inst.k:
            return True
    return False


def has_clique(n, edges, k):
    es = {frozenset(e) for e in edges}
    return any(all(frozenset(p) in es for p in combinations(S, 2)) for S in combinations(range(n), k))


def sat_backtrack(phi, k):
    """Weight-k solution by include/exclude search over x_1..x_n.

    Each constraint is checked as soon as its highest variable is decided;
    branches that overshoot k or can no longer reach it are cut.
    """
    n = phi.n
    last = [[] for _ in range(n + 1)]
    for c in phi.constraints:
        vs = [t for t in c.args if isinstance(t, int)]
        last[max(vs) if vs else 0].append(c)
    if any(not c(0) for c in last[0]):
        return None

    def go(v, a, w):
        if w > k or w + (n - v + 1) < k:
            return None
        if v > n:
            return a
        for bit in (1, 0):
            b = a | (bit << (v - 1))
            if all(c(b) for c in last[v]):
                got = go(v + 1, b, w + bit)
                if got is not None:
                    return got
        return None

    return go(1, 0, 0)
