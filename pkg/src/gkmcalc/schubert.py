"""Left divided difference operators and equivariant Schubert classes.

Classes are produced by chains of divided differences descending from the
top class and are checked against their three defining conditions:
homogeneity of degree 2 l^P(w), the prescribed product value at w, and
vanishing off the Bruhat upper set.  Two independent constructions (a
degree-by-degree linear solve and a reduced-subword sum) serve as oracles.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .gkmgraph import FlagGraph, GkmError, GkmFunction, check_gkm
from .poly import (InexactDivisionError, Polynomial, divide_exact, substitute)
from .rootdata import bruhat_leq, pairwise_relatively_prime


class PrimalityError(GkmError):
    def __init__(self, witness):
        a, b = witness
        super().__init__(f"positive roots are not pairwise relatively prime: {a!r}, {b!r}")
        self.witness = witness


_PRIME_CACHE = {}


def _require_prime(rs, force=False):
    key = id(rs)
    if key not in _PRIME_CACHE:
        _PRIME_CACHE[key] = pairwise_relatively_prime(rs)
    ok, witness = _PRIME_CACHE[key]
    if not ok and not force:
        raise PrimalityError(witness)
    return ok


def divided_difference(alpha, f, force=False):
    """delta_alpha f(v) = (f(v) - sigma_alpha(f(sigma_alpha v))) / alpha.

    Refuses on root systems violating pairwise relative primality unless
    ``force`` is set (the result is then in general not a GKM function).
    """
    graph = f.graph
    if not isinstance(graph, FlagGraph):
        raise GkmError("divided differences act on flag graphs")
    _require_prime(graph.roots, force=force)
    sigma = graph.group.reflection(alpha)
    apoly = alpha.to_poly(graph.coefficients) if not isinstance(alpha, Polynomial) else alpha
    values = []
    for u in range(graph.n_vertices):
        swapped = sigma.act_poly(f.values[graph.reflect_vertex(alpha, u)])
        diff = f.values[u] - swapped
        if not diff:
            values.append(diff)
            continue
        try:
            values.append(divide_exact(diff, apoly))
        except InexactDivisionError as exc:
            raise GkmError(
                f"divided difference not integral at vertex {graph.labels[u]}: {exc}") from exc
    return GkmFunction(graph, values)


def inversion_roots(graph, u):
    """Phi^+ n w(Phi^- \\ -<Sigma>) for the minimal representative w of vertex u."""
    rs = graph.roots
    sub_pos = _parabolic_positives(graph)
    w = graph.min_rep(u)
    winv = w.inverse()
    out = []
    for alpha in rs.positive_roots:
        pre = winv.act(alpha)
        if rs.is_positive(pre):
            continue
        if (-pre).coeffs in sub_pos:
            continue
        out.append(alpha)
    return out


_PARA_CACHE = {}


def _parabolic_positives(graph):
    key = id(graph)
    if key not in _PARA_CACHE:
        sub = graph.roots.parabolic_sub_system(graph.sigma)
        _PARA_CACHE[key] = {r.coeffs for r in sub.positive_roots}
    return _PARA_CACHE[key]


class SchubertFamily:
    """All equivariant Schubert classes of a flag graph, indexed by vertex."""

    def __init__(self, graph, classes, diagonal_factors):
        self.graph = graph
        self.classes = classes
        self.diagonal_factors = diagonal_factors

    def __getitem__(self, u):
        return self.classes[u]

    def expansion_order(self):
        graph = self.graph
        return sorted(range(graph.n_vertices), key=lambda u: (graph.lp(u), graph.min_rep(u).word))

    def check_defining_conditions(self, u):
        """Assert the three defining conditions of the class at vertex u."""
        graph = self.graph
        cls = self.classes[u]
        want = 2 * graph.lp(u)
        deg = cls.homogeneous_degree()
        if not (deg == want or (deg is None and want == 0)):
            raise GkmError(f"class at {graph.labels[u]} is not homogeneous of degree {want}")
        prod = Polynomial.const(graph.coefficients, 1)
        for alpha in self.diagonal_factors[u]:
            prod = prod * alpha.to_poly(graph.coefficients)
        if cls.values[u] != prod:
            raise GkmError(f"class at {graph.labels[u]} has wrong value at its own vertex")
        wu = graph.min_rep(u)
        for v in range(graph.n_vertices):
            if not bruhat_leq(wu, graph.min_rep(v)) and cls.values[v]:
                raise GkmError(f"class at {graph.labels[u]} fails to vanish at {graph.labels[v]}")
        return True


def schubert_family(graph, check=True):
    """Construct every class by divided differences descending from the top."""
    _require_prime(graph.roots)
    n = graph.n_vertices
    lp = [graph.lp(u) for u in range(n)]
    top = max(range(n), key=lambda u: lp[u])
    if lp.count(lp[top]) != 1:
        raise GkmError("top coset is not unique")

    diagonal = [inversion_roots(graph, u) for u in range(n)]
    coeffs = graph.coefficients
    classes = [None] * n
    top_val = Polynomial.const(coeffs, 1)
    for alpha in diagonal[top]:
        top_val = top_val * alpha.to_poly(coeffs)
    classes[top] = GkmFunction(
        graph, [top_val if u == top else Polynomial.zero(coeffs) for u in range(n)])

    simples = graph.roots.simple_roots
    for u in sorted(range(n), key=lambda u: -lp[u]):
        if classes[u] is not None:
            continue
        for alpha in simples:
            v = graph.reflect_vertex(alpha, u)
            if lp[v] == lp[u] + 1 and classes[v] is not None:
                classes[u] = divided_difference(alpha, classes[v])
                break
        else:
            raise GkmError(f"no simple ascent available at vertex {graph.labels[u]}")

    family = SchubertFamily(graph, classes, diagonal)
    if check:
        for u in range(n):
            family.check_defining_conditions(u)
    return family


_FAMILY_CACHE = {}


def schubert_family_cached(graph, check=True):
    key = id(graph)
    if key not in _FAMILY_CACHE:
        _FAMILY_CACHE[key] = schubert_family(graph, check=check)
    return _FAMILY_CACHE[key]


def schubert_class(graph, u, check=True):
    """The class S^P_w for the minimal representative at vertex u."""
    return schubert_family_cached(graph, check=check).classes[u]


def divide_by_factors(value, factors, gens):
    """Exact division by a product of linear forms, one factor at a time."""
    out = value
    for alpha in factors:
        out = divide_exact(out, alpha.to_poly(gens))
    return out


def schubert_expand(f, family):
    """Expansion f = sum_w a_w S_w by peeling in non-decreasing l^P order."""
    graph = family.graph
    residual = list(f.values)
    coefficients = {}
    for u in family.expansion_order():
        val = residual[u]
        if not val:
            continue
        try:
            b = divide_by_factors(val, family.diagonal_factors[u], graph.coefficients)
        except InexactDivisionError as exc:
            raise GkmError(
                f"expansion failed at vertex {graph.labels[u]}: not a multiple of the "
                f"diagonal product (is the input a GKM function?)") from exc
        coefficients[u] = b
        cls = family.classes[u]
        for v in range(graph.n_vertices):
            if cls.values[v]:
                residual[v] = residual[v] - b * cls.values[v]
    if any(residual):
        raise GkmError("expansion left a nonzero residual")
    return coefficients


def expand_reconstruct(coefficients, family):
    graph = family.graph
    total = GkmFunction.constant(graph, 0)
    for u, b in coefficients.items():
        total = total + b * family.classes[u]
    return total


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def _monomials(gens, half_degree, names=None):
    names = names if names is not None else gens.names
    out = []

    def rec(i, remaining, acc):
        if i == len(names):
            if remaining == 0:
                out.append(tuple(acc))
            return
        step = gens.degree_of(names[i]) // 2
        e = 0
        while e * step <= remaining:
            rec(i + 1, remaining - e * step, acc + [e])
            e += 1

    rec(0, half_degree, [])
    return out


def _mod_root_reducer(alpha, gens):
    """Substitution realizing reduction modulo the linear ideal (alpha)."""
    coeffs = alpha.coeffs
    pivot = min((i for i, c in enumerate(coeffs) if c), key=lambda i: abs(coeffs[i]))
    a = coeffs[pivot]
    pairs = []
    for i, c in enumerate(coeffs):
        if c and i != pivot:
            exps = [0] * len(gens)
            exps[gens.index(alpha.gens.names[i])] = 1
            pairs.append((tuple(exps), Fraction(-c, a)))
    image = Polynomial.from_exps(gens, pairs)
    name = alpha.gens.names[pivot]
    return lambda p: substitute(p, {name: image}, gens)


def family_by_linear_solve(graph):
    """Solve the defining linear conditions degree by degree, per class.

    Unknowns are the coefficient vectors of the values on the strict Bruhat
    upper set; the GKM condition on every edge is imposed after reduction
    modulo the edge label.  Suitable for small graphs.
    """
    from .gkmgraph import GkmFunction
    gens = graph.coefficients
    n = graph.n_vertices
    reps = [graph.min_rep(u) for u in range(n)]
    leq = [[bruhat_leq(reps[u], reps[v]) for v in range(n)] for u in range(n)]
    reducers = {}
    classes = []
    diagonal = [inversion_roots(graph, u) for u in range(n)]
    for w in range(n):
        k = graph.lp(w)
        monos = _monomials(gens, k)
        mono_index = {m: i for i, m in enumerate(monos)}
        unknown_verts = [v for v in range(n) if leq[w][v] and v != w]
        vindex = {v: i for i, v in enumerate(unknown_verts)}
        ncols = len(unknown_verts) * len(monos)

        fixed = {}
        prod = Polynomial.const(gens, 1)
        for alpha in diagonal[w]:
            prod = prod * alpha.to_poly(gens)
        fixed[w] = prod
        for v in range(n):
            if not leq[w][v]:
                fixed[v] = Polynomial.zero(gens)

        rows, rhs = [], []
        basis_cache = {}
        for e in graph.edges:
            if len(e.generators) != 1:
                raise GkmError("linear-solve oracle expects principal labels")
            alpha = e.generators[0]
            if alpha.coeffs not in reducers:
                reducers[alpha.coeffs] = _mod_root_reducer(alpha, gens)
            red = reducers[alpha.coeffs]
            if (alpha.coeffs, k) not in basis_cache:
                basis_cache[(alpha.coeffs, k)] = [
                    red(Polynomial.from_exps(gens, [(m, 1)])) for m in monos]
            reduced_basis = basis_cache[(alpha.coeffs, k)]

            coeff_rows = {}   # reduced-monomial key -> (column -> coefficient)
            const_part = {}   # reduced-monomial key -> constant

            for vtx, sign in ((e.u, 1), (e.v, -1)):
                if vtx in fixed:
                    img = red(fixed[vtx])
                    for key, c in img.terms.items():
                        const_part[key] = const_part.get(key, 0) + sign * c
                else:
                    col0 = vindex[vtx] * len(monos)
                    for mi, img in enumerate(reduced_basis):
                        for key, c in img.terms.items():
                            d = coeff_rows.setdefault(key, {})
                            d[col0 + mi] = d.get(col0 + mi, 0) + sign * c

            for key in set(coeff_rows) | set(const_part):
                row = [Fraction(0)] * ncols
                for col, c in coeff_rows.get(key, {}).items():
                    row[col] = Fraction(c)
                rows.append(row)
                rhs.append(-Fraction(const_part.get(key, 0)))

        if ncols:
            sol = linalg.solve(rows, rhs)
            if sol is None:
                raise GkmError("defining conditions are inconsistent")
        else:
            sol = []
            if any(rhs):
                raise GkmError("defining conditions are inconsistent")
        values = []
        for v in range(n):
            if v in fixed:
                values.append(fixed[v])
            else:
                col0 = vindex[v] * len(monos)
                terms = {}
                for mi, m in enumerate(monos):
                    c = sol[col0 + mi]
                    if c:
                        terms[gens.pack(m)] = c
                values.append(Polynomial(gens, terms))
        classes.append(GkmFunction(graph, values))
    return SchubertFamily(graph, classes, diagonal)


def family_by_subword_sum(graph):
    """Localization values by summation over reduced subwords of each vertex word.

    For vertex v with reduced word (b_1..b_l) and prefix products r_j, the
    class at w restricts to the sum over position subsets J picking a reduced
    expression of w of the product of the roots r_{j-1}(alpha_{b_j}), j in J.
    Defined for full flag graphs.
    """
    if graph.sigma:
        raise GkmError("subword-sum oracle is for full flag graphs")
    group = graph.group
    rs = graph.roots
    gens = graph.coefficients
    n = graph.n_vertices
    one = Polynomial.const(gens, 1)
    tables = []
    for v in range(n):
        word = graph.min_rep(v).word
        states = {0: one}
        prefix = group.identity()
        for letter in word:
            beta = prefix.act(rs.simple_roots[letter]).to_poly(gens)
            s_letter = group.simple_reflection(letter)
            new_states = dict(states)
            for uidx, poly in states.items():
                u = group.element(uidx)
                unew = u * s_letter
                if unew.length() == u.length() + 1:
                    add = poly * beta
                    cur = new_states.get(unew.idx)
                    new_states[unew.idx] = add if cur is None else cur + add
            states = {k: p for k, p in new_states.items() if p}
            prefix = prefix * s_letter
        tables.append(states)

    diagonal = [inversion_roots(graph, u) for u in range(n)]
    classes = []
    for w in range(n):
        widx = graph.min_rep(w).idx
        values = [tables[v].get(widx, Polynomial.zero(gens)) for v in range(n)]
        classes.append(GkmFunction(graph, values))
    return SchubertFamily(graph, classes, diagonal)


def all_reduced_words(w):
    """Every reduced word of w (for small-group exhaustive tests)."""
    if w.is_identity():
        return [()]
    out = []
    group = w.group
    rs = group.roots
    winv = w.inverse()
    for i, alpha in enumerate(rs.simple_roots):
        if rs.is_positive(winv.act(alpha)):
            continue          # i is a left descent exactly when w^{-1}(alpha_i) < 0
        rest = group.simple_reflection(i) * w
        out.extend([(i,) + tail for tail in all_reduced_words(rest)])
    return out
