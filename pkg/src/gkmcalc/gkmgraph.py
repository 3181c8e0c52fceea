"""Abstract GKM graphs, GKM functions, and the graphs of flag manifolds.

A GKM graph is a finite multigraph whose edges carry ideals of a polynomial
ring, given by lists of linear-form generators.  A GKM function assigns a
ring element to each vertex so that the difference across every edge lies in
the edge's ideal.  Flag graphs realize W/W_P with edges labelled by positive
roots; loops are never stored since they cannot affect the cohomology.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .poly import (CoefficientHom, GeneratorSet, InexactDivisionError, LinearForm,
                   Polynomial, divide_exact, PolyError)
from .rootdata import CosetTable, RootSystem, WeylElement, WeylGroup, coset_table


class GkmError(ValueError):
    pass


def in_linear_ideal(d, generators):
    """Exact membership of d in the ideal generated by linear forms.

    The ideal of a set of linear forms consists of the polynomials vanishing
    on their common zero locus; membership is tested by substituting an
    integer basis of that subspace.
    """
    gens_nonzero = [g for g in generators if not g.is_zero()]
    if not gens_nonzero:
        return d.is_zero()
    if len(gens_nonzero) == 1:
        try:
            divide_exact(d, gens_nonzero[0].to_poly(d.gens))
            return True
        except InexactDivisionError:
            return False
    from math import gcd
    lattice = gens_nonzero[0].gens
    rows = [list(g.coeffs) for g in gens_nonzero]
    kernel = linalg.nullspace(rows)
    if not kernel:
        return d.is_zero()
    params = GeneratorSet.of(*(f"s{i}" for i in range(len(kernel))))
    denom = 1
    for vec in kernel:
        for x in vec:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    basis = [[int(x * denom) for x in vec] for vec in kernel]
    images = {
        name: LinearForm(params, tuple(basis[j][i] for j in range(len(basis))))
        for i, name in enumerate(lattice.names)
    }
    hom = CoefficientHom(d.gens, params, {n: images[n] for n in lattice.names if n in d.gens.names})
    return hom.apply(d).is_zero()


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    generators: tuple


class GkmGraph:
    """Finite multigraph with ideal-valued edge labels."""

    def __init__(self, coefficients, labels, edges, name=""):
        self.name = name
        self.coefficients = coefficients
        self.labels = list(labels)
        self.edges = []
        for e in edges:
            u, v, gens = e
            gens = tuple(gens)
            if u == v:
                continue          # loops never affect the cohomology
            if not gens:
                raise GkmError("edge label must have at least one generator")
            self.edges.append(Edge(u, v, gens))

    @property
    def n_vertices(self):
        return len(self.labels)

    def edges_between(self, u, v):
        return [e for e in self.edges if {e.u, e.v} == {u, v}]

    def degree(self, u):
        return sum(1 for e in self.edges if u in (e.u, e.v))

    def __repr__(self):
        return f"GkmGraph({self.name or 'anon'}: {self.n_vertices} vertices, {len(self.edges)} edges)"


class FlagGraph(GkmGraph):
    """GKM graph of W/W_P: vertices are minimal coset representatives.

    Vertices are tracked by the orbit of a Sigma-fixed regular weight, so
    reflections and the Weyl action on vertices are integer matrix-vector
    products.
    """

    def __init__(self, group, sigma=(), name=""):
        self.group = group
        self.roots = group.roots
        self.sigma = tuple(sorted(sigma))
        self.table = coset_table(group, self.sigma)
        vecs = self.table.orbit_vectors
        self._vecarray = np.array(vecs, dtype=np.int64)
        edges = []
        index = self.table.vector_index
        for ridx, alpha in enumerate(self.roots.positive_roots):
            mat = np.array(self.roots.reflection_matrix(alpha), dtype=np.int64)
            images = self._vecarray @ mat.T
            for u in range(len(vecs)):
                v = index[tuple(int(x) for x in images[u])]
                if u < v:
                    edges.append((u, v, (alpha,)))
        labels = ["-".join(str(i + 1) for i in w.word) or "e" for w in self.table.min_reps]
        super().__init__(group.lattice, labels, edges, name=name or f"G({self.roots.name}/P{self.sigma})")

    def lp(self, u):
        return self.table.lp[u]

    def min_rep(self, u):
        return self.table.min_reps[u]

    def vertex_vector(self, u):
        return self.table.orbit_vectors[u]

    def reflect_vertex(self, alpha, u):
        mat = np.array(self.roots.reflection_matrix(alpha), dtype=np.int64)
        img = mat @ np.array(self.table.orbit_vectors[u], dtype=np.int64)
        return self.table.vector_index[tuple(int(x) for x in img)]

    def act_vertex(self, w, u):
        img = w.group.act_vector(w.idx, self.table.orbit_vectors[u])
        return self.table.vector_index[img]

    def vertex_of_element(self, w):
        return self.table.vertex_of_element(w)


def build_flag_graph(rs_or_group, sigma=()):
    """Spec operation: the GKM graph of G_C/P for a parabolic Sigma."""
    group = rs_or_group if isinstance(rs_or_group, WeylGroup) else WeylGroup(rs_or_group)
    return FlagGraph(group, sigma)


class GkmFunction:
    """Vertex-indexed polynomial map on a GKM graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph, values):
        self.graph = graph
        values = list(values)
        if len(values) != graph.n_vertices:
            raise GkmError("one value per vertex required")
        self.values = values

    @classmethod
    def constant(cls, graph, poly_or_scalar, gens=None):
        gens = gens or graph.coefficients
        p = poly_or_scalar if isinstance(poly_or_scalar, Polynomial) else Polynomial.const(gens, poly_or_scalar)
        return cls(graph, [p] * graph.n_vertices)

    def __getitem__(self, u):
        return self.values[u]

    def __add__(self, other):
        if isinstance(other, GkmFunction):
            return GkmFunction(self.graph, [a + b for a, b in zip(self.values, other.values)])
        return GkmFunction(self.graph, [a + other for a in self.values])

    def __sub__(self, other):
        if isinstance(other, GkmFunction):
            return GkmFunction(self.graph, [a - b for a, b in zip(self.values, other.values)])
        return GkmFunction(self.graph, [a - other for a in self.values])

    def __mul__(self, other):
        if isinstance(other, GkmFunction):
            return GkmFunction(self.graph, [a * b for a, b in zip(self.values, other.values)])
        return GkmFunction(self.graph, [a * other for a in self.values])

    __rmul__ = __mul__

    def __neg__(self):
        return GkmFunction(self.graph, [-a for a in self.values])

    def __eq__(self, other):
        return isinstance(other, GkmFunction) and self.graph is other.graph and self.values == other.values

    def is_zero(self):
        return all(not v for v in self.values)

    def homogeneous_degree(self):
        degs = {v.homogeneous_degree() for v in self.values if v}
        if len(degs) > 1:
            raise GkmError("function is not homogeneous")
        return degs.pop() if degs else None

    def support(self):
        return [u for u, v in enumerate(self.values) if v]

    def is_integral(self):
        return all(v.is_integral() for v in self.values)


@dataclass
class GkmViolation:
    edge: Edge
    difference: Polynomial

    def __repr__(self):
        return f"violation on edge ({self.edge.u},{self.edge.v}) labelled {self.edge.generators}"


def check_gkm(f, edges=None):
    """List of edges where f(u) - f(v) fails to lie in the edge ideal."""
    graph = f.graph
    violations = []
    for e in (edges if edges is not None else graph.edges):
        d = f.values[e.u] - f.values[e.v]
        if not d:
            continue
        if not in_linear_ideal(d, e.generators):
            violations.append(GkmViolation(e, d))
    return violations


def is_gkm(f):
    return not check_gkm(f)


class GkmHom:
    """Graph homomorphism phi with coefficient homomorphism psi.

    Collapsed edges (phi(u) = phi(v)) map to the implicit zero-labelled loop
    and impose no condition.  For the rest, some codomain edge between the
    image vertices must have its psi-image label contained in the source
    edge's ideal.
    """

    def __init__(self, domain, codomain, vertex_map, coeff_hom=None):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = list(vertex_map)
        self.coeff_hom = coeff_hom

    def _psi(self, poly):
        return poly if self.coeff_hom is None else self.coeff_hom.apply(poly)

    def validate(self):
        failures = []
        for e in self.domain.edges:
            pu, pv = self.vertex_map[e.u], self.vertex_map[e.v]
            if pu == pv:
                continue
            ok = False
            for e2 in self.codomain.edges_between(pu, pv):
                if all(in_linear_ideal(self._psi(g.to_poly()), e.generators) for g in e2.generators):
                    ok = True
                    break
            if not ok:
                failures.append(e)
        return failures

    def pullback(self, f, check=True):
        if f.graph is not self.codomain:
            raise GkmError("function not defined on the codomain graph")
        values = [self._psi(f.values[self.vertex_map[u]]) for u in range(self.domain.n_vertices)]
        out = GkmFunction(self.domain, values)
        if check:
            bad = check_gkm(out)
            if bad:
                raise GkmError(f"pullback violates the GKM condition: {bad[0]}")
        return out


def pullback(h, f, check=True):
    return h.pullback(f, check=check)


def weyl_translate(w, f):
    """(w . f)(v) = w(f(w^{-1} v)) on a flag graph."""
    graph = f.graph
    if not isinstance(graph, FlagGraph):
        raise GkmError("Weyl translation needs a flag graph")
    winv = w.inverse()
    values = []
    for u in range(graph.n_vertices):
        src = graph.act_vertex(winv, u)
        values.append(w.act_poly(f.values[src]))
    return GkmFunction(graph, values)


def restrict_to_subgraph(f, subgraph, vertex_map):
    """Restriction along an induced-subgraph inclusion (vertex_map: sub -> big)."""
    return GkmFunction(subgraph, [f.values[vertex_map[u]] for u in range(subgraph.n_vertices)])


def induced_subgraph(graph, vertex_indices, name=""):
    """Induced GKM subgraph on a vertex subset; returns (subgraph, vertex_map)."""
    vset = {v: i for i, v in enumerate(vertex_indices)}
    edges = []
    for e in graph.edges:
        if e.u in vset and e.v in vset:
            edges.append((vset[e.u], vset[e.v], e.generators))
    sub = GkmGraph(graph.coefficients, [graph.labels[v] for v in vertex_indices], edges,
                   name=name or f"{graph.name}|sub")
    return sub, list(vertex_indices)


def graph_to_json(graph):
    return {
        "name": graph.name,
        "generators": [{"name": n, "degree": d}
                       for n, d in zip(graph.coefficients.names, graph.coefficients.degrees)],
        "vertices": list(graph.labels),
        "edges": [
            {"u": e.u, "v": e.v, "label": [list(g.coeffs) for g in e.generators]}
            for e in graph.edges
        ],
    }


def graph_from_json(data):
    gens = GeneratorSet(tuple(g["name"] for g in data["generators"]),
                        tuple(g["degree"] for g in data["generators"]))
    edges = [
        (e["u"], e["v"], tuple(LinearForm(gens, tuple(c)) for c in e["label"]))
        for e in data["edges"]
    ]
    return GkmGraph(gens, data["vertices"], edges, name=data.get("name", ""))


def _root_string(form):
    parts = []
    for name, c in zip(form.gens.names, form.coeffs):
        if not c:
            continue
        if c == 1:
            parts.append(f"+{name}")
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{c:+d}{name}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def graph_to_dot(graph):
    lines = [f'graph "{graph.name or "gkm"}" {{']
    for i, lab in enumerate(graph.labels):
        lines.append(f'  v{i} [label="{lab}"];')
    for e in graph.edges:
        label = ", ".join(_root_string(g) for g in e.generators)
        lines.append(f'  v{e.u} -- v{e.v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
