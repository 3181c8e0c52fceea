"""GKM fiber bundles and the constructive Leray-Hirsch machinery.

A fiber bundle here is the triple of flag graphs G(W2/W1) -> G(W/W1) ->
G(W/W2) for nested parabolic subsets.  A peel sequence on the base (vertices
v_i with functions phi_i vanishing at earlier vertices and taking the
product of the connecting edge labels at v_i) drives two algorithms: module
peeling of a base function, and expression of a total-space function as a
combination sum_j phi_j F_j with F_j built from lifted fiber classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .gkmgraph import (FlagGraph, GkmError, GkmFunction, GkmHom, check_gkm)
from .poly import (GeneratorSet, InexactDivisionError, Polynomial, divide_exact)
from .rootdata import WeylGroup
from .schubert import (SchubertFamily, divide_by_factors, schubert_expand,
                       schubert_family_cached, _monomials)


class PeelError(GkmError):
    pass


@dataclass
class FiberBundle:
    """F = G(W2/W1) -> G = G(W/W1) -> B = G(W/W2) for Sigma1 within Sigma2."""

    group: WeylGroup
    sigma1: tuple
    sigma2: tuple
    total: FlagGraph
    base: FlagGraph
    fiber_group: WeylGroup
    fiber: FlagGraph
    fiber_to_total: list
    projection: list
    inclusion: GkmHom = field(default=None)
    proj_hom: GkmHom = field(default=None)

    def fiber_vertices_over(self, base_vertex):
        return [t for t, b in enumerate(self.projection) if b == base_vertex]


def build_fiber_bundle(group, sigma1, sigma2):
    sigma1, sigma2 = tuple(sorted(sigma1)), tuple(sorted(sigma2))
    if not set(sigma1) <= set(sigma2):
        raise PeelError("sigma1 must be contained in sigma2")
    rs = group.roots
    total = FlagGraph(group, sigma1)
    base = FlagGraph(group, sigma2)
    sub = rs.parabolic_sub_system(sigma2)
    fiber_group = WeylGroup(sub)
    sub_sigma1 = []
    for i in sigma1:
        form = rs.simple_roots[i]
        match = next((j for j, a in enumerate(sub.simple_roots) if a.coeffs == form.coeffs), None)
        if match is None:
            raise PeelError("sigma1 simple root missing from the sigma2 subsystem")
        sub_sigma1.append(match)
    fiber = FlagGraph(fiber_group, tuple(sub_sigma1))

    fiber_to_total = []
    for u in range(fiber.n_vertices):
        wu = fiber.min_rep(u)
        ambient = group.element(group.lookup(wu.matrix))
        fiber_to_total.append(total.vertex_of_element(ambient))
    projection = [base.vertex_of_element(total.min_rep(t)) for t in range(total.n_vertices)]

    bundle = FiberBundle(group, sigma1, sigma2, total, base, fiber_group, fiber,
                         fiber_to_total, projection)
    bundle.inclusion = GkmHom(fiber, total, fiber_to_total)
    bundle.proj_hom = GkmHom(total, base, projection)
    bad = bundle.inclusion.validate()
    if bad:
        raise PeelError(f"fiber inclusion fails the containment condition: {bad[0]}")
    bad = bundle.proj_hom.validate()
    if bad:
        raise PeelError(f"projection fails the containment condition: {bad[0]}")
    return bundle


@dataclass
class PeelSequence:
    """Vertices v_i and functions phi_i of the base satisfying the peel conditions.

    ``factored`` stores, per row, the linear-form labels of the edges from
    v_i back to earlier vertices; ``signs`` records phi_i(v_i) divided by the
    product of those positive labels (+1 or -1, an ideal generator is only
    canonical up to sign).
    """

    graph: object
    order: list
    functions: list
    factored: list = None
    signs: list = None

    def validate(self):
        graph = self.graph
        n = graph.n_vertices
        if sorted(self.order) != list(range(n)):
            raise PeelError("peel sequence must list every base vertex exactly once")
        if len(self.functions) != n:
            raise PeelError("one function per vertex required")
        if self.functions[0].values[self.order[0]] != 1:
            raise PeelError("row 1: phi_1 must be the constant 1")
        self.factored = []
        self.signs = []
        seen = set()
        for i, v in enumerate(self.order):
            phi = self.functions[i]
            for j in range(i):
                if phi.values[self.order[j]]:
                    raise PeelError(f"row {i + 1}: phi does not vanish at earlier vertex "
                                    f"{graph.labels[self.order[j]]}")
            factors = []
            for e in graph.edges:
                if {e.u, e.v} <= seen | {v} and v in (e.u, e.v) and {e.u, e.v} != {v}:
                    if len(e.generators) != 1:
                        raise PeelError("peel sequences need principal edge labels")
                    factors.append(e.generators[0])
            prod = Polynomial.const(graph.coefficients, 1)
            for a in factors:
                prod = prod * a.to_poly(graph.coefficients)
            val = phi.values[v]
            if val == prod:
                sign = 1
            elif val == -prod:
                sign = -1
            else:
                raise PeelError(f"row {i + 1}: phi({graph.labels[v]}) differs from the product "
                                f"of the connecting labels")
            if i > 0 and (val.homogeneous_degree() or 0) < 2:
                raise PeelError(f"row {i + 1}: phi must have degree at least 2")
            self.factored.append(factors)
            self.signs.append(sign)
            seen.add(v)
        return self


def build_peel_sequence(bundle_or_graph, family=None):
    """Schubert-based sequence: vertices in non-decreasing l^P order, phi_i = S_{v_i}."""
    base = bundle_or_graph.base if isinstance(bundle_or_graph, FiberBundle) else bundle_or_graph
    family = family or schubert_family_cached(base)
    order = family.expansion_order()
    functions = [family.classes[v] for v in order]
    seq = PeelSequence(base, order, functions).validate()
    if any(s != 1 for s in seq.signs):
        raise PeelError("Schubert peel sequence produced a sign mismatch")
    return seq


def peel_base_coefficients(f, seq):
    """Module expansion f = sum_i b_i phi_i over H*(BT) by triangular peeling."""
    graph = seq.graph
    if seq.factored is None:
        seq.validate()
    residual = list(f.values)
    coeffs = []
    for i, v in enumerate(seq.order):
        val = residual[v]
        if val:
            try:
                b = divide_by_factors(val, seq.factored[i], graph.coefficients) * seq.signs[i]
            except InexactDivisionError as exc:
                raise PeelError(f"row {i + 1}: value at {graph.labels[v]} is not divisible "
                                f"by the connecting-label product") from exc
        else:
            b = Polynomial.zero(graph.coefficients)
        coeffs.append(b)
        if b:
            phi = seq.functions[i]
            for t in range(graph.n_vertices):
                if phi.values[t]:
                    residual[t] = residual[t] - b * phi.values[t]
    if any(residual):
        raise PeelError("peeling left a nonzero residual")
    return coeffs


@dataclass
class PeelExpansion:
    """f = sum_j phi_j * F_j with F_j = sum_u c_{j,u} (v_j . lifted class u)."""

    bundle: FiberBundle
    sequence: PeelSequence
    coefficients: list          # per row: dict fiber-vertex -> Polynomial
    lifted_terms: list          # per row: the assembled GkmFunction F_j on the total space

    def reconstruct(self):
        bundle = self.bundle
        total = bundle.total
        out = GkmFunction.constant(total, 0)
        for j, Fj in enumerate(self.lifted_terms):
            phi = self.sequence.functions[j]
            phi_tot = GkmFunction(total, [phi.values[bundle.projection[t]]
                                          for t in range(total.n_vertices)])
            out = out + phi_tot * Fj
        return out


def peel_generators(f, bundle, seq=None, total_family=None, fiber_family=None):
    """Express a total-space GKM function through the peel sequence.

    Follows the inductive construction: restrict to the fiber over v_j,
    divide by the connecting-label product A_j, translate back to the
    standard fiber, expand there in the fiber Schubert basis, and lift the
    expansion using Weyl translates of the ambient Schubert classes.
    """
    from .gkmgraph import weyl_translate
    from .schubert import _require_prime
    _require_prime(bundle.group.roots)
    seq = seq or build_peel_sequence(bundle)
    fiber_family = fiber_family or schubert_family_cached(bundle.fiber)
    total_family = total_family or schubert_family_cached(bundle.total)
    total = bundle.total
    fiber = bundle.fiber
    coeffs_out = []
    lifted_out = []
    residual = f
    lift_of = {u: total_family.classes[bundle.fiber_to_total[u]] for u in range(fiber.n_vertices)}
    for j, vb in enumerate(seq.order):
        vj = bundle.base.min_rep(vb)
        vjinv = vj.inverse()
        h_vals = []
        for u in range(fiber.n_vertices):
            t = total.act_vertex(vj, bundle.fiber_to_total[u])
            val = residual.values[t]
            if val:
                try:
                    val = divide_by_factors(val, seq.factored[j], total.coefficients)
                except InexactDivisionError as exc:
                    raise PeelError(f"row {j + 1}: restriction to the fiber over "
                                    f"{bundle.base.labels[vb]} is not divisible by A_j") from exc
                val = val * seq.signs[j]
            h_vals.append(vjinv.act_poly(val) if val else val)
        h = GkmFunction(fiber, h_vals)
        try:
            a = schubert_expand(h, fiber_family)
        except GkmError as exc:
            raise PeelError(f"row {j + 1}: expression over the fiber at "
                            f"{bundle.base.labels[vb]} failed: {exc}") from exc
        Fj = GkmFunction.constant(total, 0)
        cj = {}
        for u, coeff in a.items():
            translated = lift_of[u] if vj.is_identity() else weyl_translate(vj, lift_of[u])
            c = vj.act_poly(coeff)
            cj[u] = c
            Fj = Fj + c * translated
        coeffs_out.append(cj)
        lifted_out.append(Fj)
        phi = seq.functions[j]
        phi_tot = GkmFunction(total, [phi.values[bundle.projection[t]]
                                      for t in range(total.n_vertices)])
        residual = residual - phi_tot * Fj
    if not residual.is_zero():
        raise PeelError("peeling left a nonzero residual on the total space")
    return PeelExpansion(bundle, seq, coeffs_out, lifted_out)


# ---------------------------------------------------------------------------
# Presentations and relation verification
# ---------------------------------------------------------------------------

@dataclass
class Presentation:
    """Free graded ring on (coefficient basis + named classes) with relations."""

    gens: GeneratorSet          # full generator set, coefficient basis included
    class_names: tuple          # which generators are classes, not coefficients
    relations: list             # homogeneous polynomials over ``gens``

    def __post_init__(self):
        for r in self.relations:
            if not r.is_homogeneous():
                raise PeelError("presentation relations must be homogeneous")


def verify_relation_lift(relation, images, graph, vertices=None):
    """Check Xi(relation) = 0 by evaluation at vertices.

    ``images`` maps each class generator name to a GkmFunction on ``graph``;
    coefficient generators pass through.  Returns (ok, failures) where each
    failure is (vertex index, residual polynomial).
    """
    from .poly import substitute
    target = graph.coefficients
    failures = []
    scope = range(graph.n_vertices) if vertices is None else vertices
    for v in scope:
        subs = {name: fn.values[v] for name, fn in images.items()}
        residual = substitute(relation, subs, target)
        if residual:
            failures.append((v, residual))
    return (not failures), failures


def ideal_rank_in_degree(gens, relations, degree):
    """dim_Q of the degree-d graded piece of the ideal the relations generate."""
    rows = []
    for r in relations:
        rdeg = r.homogeneous_degree()
        if rdeg is None or rdeg > degree or (degree - rdeg) % 2:
            continue
        for m in _monomials(gens, (degree - rdeg) // 2):
            prod = Polynomial.from_exps(gens, [(m, 1)]) * r
            rows.append(dict(prod.terms))
    return _sparse_rank(rows)


def _sparse_rank(rows):
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(c) for k, c in row.items() if c}
        while row:
            lead = max(row)
            if lead in pivots:
                prow, pc = pivots[lead]
                f = row[lead] / pc
                for k, c in prow.items():
                    s = row.get(k, Fraction(0)) - f * c
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
            else:
                pivots[lead] = (row, row[lead])
                rank += 1
                break
    return rank


def count_monomials(gens, degree, names=None):
    if degree % 2:
        return 0
    return len(_monomials(gens, degree // 2, names=names))


def graded_rank_check(presentation, lp_values, coefficient_names, max_degree):
    """Compare ranks of (free ring / ideal) with the Schubert Poincare count.

    ``lp_values``: quotient lengths of the Schubert classes; the expected
    rank in degree 2d is  sum_w #{coefficient monomials of degree 2d - 2 l(w)}.
    Returns a per-degree report list of (degree, free, ideal, expected, ok).
    """
    report = []
    for degree in range(0, max_degree + 1, 2):
        free = count_monomials(presentation.gens, degree)
        ideal = ideal_rank_in_degree(presentation.gens, presentation.relations, degree)
        expected = sum(
            count_monomials(presentation.gens, degree - 2 * l, names=coefficient_names)
            for l in lp_values
        )
        report.append((degree, free, ideal, expected, free - ideal == expected))
    return report


def relations_by_evaluation(graph, gens, class_images, max_degree):
    """Kernel elements of Xi up to a degree bound, by exact linear algebra.

    Enumerates monomials in the full generator set, evaluates the class
    generators on the graph, and returns a basis of the coefficient
    combinations that vanish at every vertex.
    """
    from .poly import substitute
    relations = []
    coeff_names = [n for n in gens.names if n not in class_images]
    for degree in range(2, max_degree + 1, 2):
        monos = _monomials(gens, degree // 2)
        cols = []
        for m in monos:
            mono = Polynomial.from_exps(gens, [(m, 1)])
            values = []
            for v in range(graph.n_vertices):
                subs = {name: fn.values[v] for name, fn in class_images.items()}
                values.append(substitute(mono, subs, graph.coefficients))
            cols.append(values)
        keyset = sorted({k for col in cols for val in col for k in val.terms})
        keypos = {(vi, k): i for i, (vi, k) in enumerate(
            (vi, k) for vi in range(graph.n_vertices) for k in keyset)}
        matrix = []
        for col in cols:
            row = [Fraction(0)] * len(keypos)
            for vi, val in enumerate(col):
                for k, c in val.terms.items():
                    row[keypos[(vi, k)]] = Fraction(c)
            matrix.append(row)
        for vec in linalg.nullspace([list(x) for x in zip(*matrix)] or [[Fraction(0)] * len(matrix)]):
            terms = {}
            for mi, c in enumerate(vec):
                if c:
                    terms[gens.pack(monos[mi])] = c
            if terms:
                rel = Polynomial(gens, terms)
                denom = rel.denominator_lcm()
                relations.append(rel * denom)
    return _prune_redundant(gens, relations)


def _prune_redundant(gens, relations):
    """Drop relations already generated by lower-degree ones."""
    kept = []
    for r in sorted(relations, key=lambda r: r.homogeneous_degree()):
        d = r.homogeneous_degree()
        before = ideal_rank_in_degree(gens, kept, d)
        after = ideal_rank_in_degree(gens, kept + [r], d)
        if after > before:
            kept.append(r)
    return kept
