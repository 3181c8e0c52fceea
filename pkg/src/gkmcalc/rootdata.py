"""Root systems, Weyl groups, Bruhat order, and parabolic coset combinatorics.

Roots live as integer vectors in a chosen basis of the weight lattice
H^2(BT); Weyl elements are integer lattice automorphisms stored as stacked
numpy matrices, enumerated by breadth-first search over left multiplication
by simple reflections (so the BFS level is the length).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .poly import GeneratorSet, LinearForm, PolyError, CoefficientHom

_CLOSURE_BOUND = 10000


class RootDataError(ValueError):
    pass


def _dot(gram, u, v):
    total = Fraction(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = gram[i]
        for j, vj in enumerate(v):
            if vj:
                total += Fraction(ui) * row[j] * vj
    return total


def reflect(gram, alpha, v):
    """sigma_alpha(v) = v - 2(v,alpha)/(alpha,alpha) alpha, exact."""
    aa = _dot(gram, alpha, alpha)
    coeff = 2 * _dot(gram, v, alpha) / aa
    return tuple(Fraction(x) - coeff * a for x, a in zip(v, alpha))


def _as_int_vector(v, what="vector"):
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise RootDataError(f"{what} is not integral: {tuple(map(str, v))}")
        out.append(f.numerator)
    return tuple(out)


@dataclass(frozen=True)
class CartanDatum:
    """Cartan matrix together with a concrete weight-lattice realization."""

    name: str
    lattice: GeneratorSet
    simple_roots: tuple
    gram: tuple
    weights: dict = field(default_factory=dict, compare=False)

    @property
    def rank(self):
        return len(self.simple_roots)

    @property
    def cartan_matrix(self):
        k = self.rank
        mat = []
        for i in range(k):
            ai = self.simple_roots[i].coeffs
            row = []
            for j in range(k):
                aj = self.simple_roots[j].coeffs
                c = 2 * _dot(self.gram, ai, aj) / _dot(self.gram, aj, aj)
                if c.denominator != 1:
                    raise RootDataError("Cartan pairing is not integral")
                row.append(c.numerator)
            mat.append(tuple(row))
        return tuple(mat)

    def validate(self):
        cm = self.cartan_matrix
        for i in range(self.rank):
            if cm[i][i] != 2:
                raise RootDataError("diagonal Cartan entry is not 2")
            for j in range(self.rank):
                if i != j and cm[i][j] > 0:
                    raise RootDataError("positive off-diagonal Cartan entry")
        vecs = [list(r.coeffs) for r in self.simple_roots]
        if linalg.rank(vecs) != self.rank:
            raise RootDataError("simple roots are linearly dependent")
        return True

    def weight(self, name):
        return self.weights[name]


class RootSystem:
    """Closure of a set of simple roots under simple reflections."""

    def __init__(self, lattice, simple_roots, gram, name=""):
        self.name = name
        self.lattice = lattice
        self.gram = gram
        self.simple_roots = tuple(simple_roots)
        self._generate()

    @classmethod
    def from_datum(cls, datum):
        datum.validate()
        return cls(datum.lattice, datum.simple_roots, datum.gram, name=datum.name)

    def _generate(self):
        simples = [r.coeffs for r in self.simple_roots]
        seen = {v: None for v in simples}
        frontier = list(simples)
        while frontier:
            if len(seen) > _CLOSURE_BOUND:
                raise RootDataError("root closure exceeded bound; bad Cartan data")
            nxt = []
            for v in frontier:
                for a in simples:
                    w = _as_int_vector(reflect(self.gram, a, v), "root")
                    if w not in seen:
                        seen[w] = None
                        nxt.append(w)
            frontier = nxt

        smat = [[Fraction(simples[j][i]) for j in range(len(simples))] for i in range(len(self.lattice))]
        positives = []
        negatives = []
        for v in seen:
            coords = linalg.solve(smat, [Fraction(x) for x in v])
            if coords is None:
                raise RootDataError("root outside the span of the simple roots")
            if all(c >= 0 for c in coords):
                positives.append((sum(coords), v))
            elif all(c <= 0 for c in coords):
                negatives.append(v)
            else:
                raise RootDataError("root with mixed-sign simple coordinates")
        if 2 * len(positives) != len(seen):
            raise RootDataError("closure is not symmetric")
        positives.sort()
        self.positive_roots = tuple(LinearForm(self.lattice, v) for _, v in positives)
        self.roots = self.positive_roots + tuple(-r for r in self.positive_roots)
        self._root_index = {r.coeffs: i for i, r in enumerate(self.roots)}
        self.n_positive = len(self.positive_roots)

    def __len__(self):
        return len(self.roots)

    def root_index(self, form):
        coeffs = form.coeffs if isinstance(form, LinearForm) else tuple(form)
        idx = self._root_index.get(coeffs)
        if idx is None:
            raise RootDataError("not a root of this system")
        return idx

    def is_root(self, coeffs):
        return tuple(coeffs) in self._root_index

    def is_positive(self, form):
        return self.root_index(form) < self.n_positive

    def positive_form(self, form):
        """The positive root proportional-equal to +-form."""
        return self.positive_roots[self.root_index(form) % self.n_positive]

    def reflection_matrix(self, form):
        """Integer matrix of sigma_alpha (columns are images of basis vectors)."""
        n = len(self.lattice)
        alpha = form.coeffs if isinstance(form, LinearForm) else tuple(form)
        cols = []
        for j in range(n):
            basis = tuple(1 if i == j else 0 for i in range(n))
            cols.append(_as_int_vector(reflect(self.gram, alpha, basis), "reflection image"))
        return np.array(cols, dtype=np.int16).T

    def sub_system(self, roots):
        """Root subsystem generated by the given roots (closure inside self)."""
        forms = []
        for r in roots:
            idx = self.root_index(r if isinstance(r, (LinearForm, tuple)) else r)
            forms.append(self.roots[idx])
        if not forms:
            return RootSystem(self.lattice, (), self.gram, name=f"{self.name}-sub")
        seen = {f.coeffs for f in forms} | {(-f).coeffs for f in forms}
        changed = True
        while changed:
            changed = False
            for a in list(seen):
                for v in list(seen):
                    w = _as_int_vector(reflect(self.gram, a, v))
                    if w not in seen:
                        seen.add(w)
                        changed = True
        positives = [v for v in seen if self._root_index[v] < self.n_positive]
        posset = set(positives)
        simples = []
        for v in positives:
            if not any(tuple(a - b for a, b in zip(v, u)) in posset for u in positives if u != v):
                simples.append(v)
        simples.sort(key=lambda v: self._root_index[v])
        return RootSystem(self.lattice, tuple(LinearForm(self.lattice, v) for v in simples),
                          self.gram, name=f"{self.name}-sub")

    def parabolic_sub_system(self, sigma):
        """Subsystem spanned by a subset of the simple roots (indices or forms)."""
        forms = [self.simple_roots[i] if isinstance(i, int) else i for i in sigma]
        return self.sub_system(forms)


def generate_roots(datum):
    """Spec operation: full root system from Cartan data."""
    return RootSystem.from_datum(datum)


def pairwise_relatively_prime(rs):
    """Check HHH's hypothesis: any two positive roots relatively prime in H^*(BT).

    Returns (ok, witness) where witness is a pair of offending roots or None.
    Two integer linear forms fail to be relatively prime exactly when their
    contents share a factor or their primitive parts are proportional.
    """
    pos = rs.positive_roots
    from math import gcd
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            a, b = pos[i], pos[j]
            if gcd(a.content(), b.content()) != 1 or a.proportional_to(b):
                return False, (a, b)
    return True, None


class WeylGroup:
    """All elements of the Weyl group of a root system, as lattice matrices."""

    def __init__(self, rs):
        self.roots = rs
        self.lattice = rs.lattice
        self._build()
        self._inv_cache = {}
        self._word_cache = {}

    def _build(self):
        rs = self.roots
        n = len(self.lattice)
        simple_mats = [rs.reflection_matrix(a) for a in rs.simple_roots]
        self.simple_mats = simple_mats
        ident = np.eye(n, dtype=np.int16)
        mats = [ident]
        lengths = [0]
        index = {ident.tobytes(): 0}
        frontier = np.array([ident]) if simple_mats else np.empty((0, n, n), dtype=np.int16)
        level = 0
        while len(frontier):
            level += 1
            candidates = []
            for s in simple_mats:
                candidates.append(s @ frontier)
            cand = np.concatenate(candidates) if candidates else np.empty((0, n, n), dtype=np.int16)
            fresh = []
            for m in cand:
                key = m.tobytes()
                if key not in index:
                    index[key] = len(mats)
                    mats.append(m)
                    lengths.append(level)
                    fresh.append(m)
            frontier = np.array(fresh) if fresh else np.empty((0, n, n), dtype=np.int16)
        self.mats = np.stack(mats).astype(np.int16)
        if np.abs(self.mats).max() >= 100:
            raise RootDataError("matrix entries too large for the packed representation")
        self.index = index
        self.lengths = np.array(lengths, dtype=np.int16)
        self.size = len(mats)

    def __len__(self):
        return self.size

    def element(self, idx):
        return WeylElement(self, idx)

    def identity(self):
        return WeylElement(self, 0)

    def elements(self):
        return [WeylElement(self, i) for i in range(self.size)]

    def lookup(self, mat):
        key = np.asarray(mat, dtype=np.int16).tobytes()
        idx = self.index.get(key)
        if idx is None:
            raise RootDataError("matrix is not an element of this Weyl group")
        return idx

    def mul(self, i, j):
        return self.index[(self.mats[i] @ self.mats[j]).astype(np.int16).tobytes()]

    def inv(self, i):
        cached = self._inv_cache.get(i)
        if cached is not None:
            return cached
        m = self.mats[i]
        inv = linalg.invert([[int(x) for x in row] for row in m])
        mat = np.array([[int(x) for x in row] for row in inv], dtype=np.int16)
        idx = self.lookup(mat)
        self._inv_cache[i] = idx
        return idx

    def simple_reflection(self, i):
        return WeylElement(self, self.index[self.simple_mats[i].tobytes()])

    def reflection(self, form):
        return WeylElement(self, self.lookup(self.roots.reflection_matrix(form)))

    def act_vector(self, i, coeffs):
        v = self.mats[i] @ np.array(coeffs, dtype=np.int64)
        return tuple(int(x) for x in v)

    def is_negative_vector(self, coeffs):
        return self.roots.root_index(LinearForm(self.lattice, tuple(int(c) for c in coeffs))) >= self.roots.n_positive

    def word(self, idx):
        """Lexicographically least reduced word, as a tuple of simple indices."""
        cached = self._word_cache.get(idx)
        if cached is not None:
            return cached
        word = []
        cur = idx
        while cur != 0:
            inv = self.mats[self.inv(cur)]
            for i, alpha in enumerate(self.roots.simple_roots):
                img = inv @ np.array(alpha.coeffs, dtype=np.int64)
                if self.is_negative_vector(img):
                    word.append(i)
                    cur = self.mul(self.index[self.simple_mats[i].tobytes()], cur)
                    break
            else:
                raise RootDataError("element without left descent")
        out = tuple(word)
        self._word_cache[idx] = out
        return out

    def longest_element(self):
        return WeylElement(self, int(np.argmax(self.lengths)))


class WeylElement:
    """Handle onto one group element: matrix, canonical word, actions."""

    __slots__ = ("group", "idx")

    def __init__(self, group, idx):
        self.group = group
        self.idx = idx

    @property
    def matrix(self):
        return self.group.mats[self.idx]

    @property
    def word(self):
        return self.group.word(self.idx)

    def length(self):
        return int(self.group.lengths[self.idx])

    def __mul__(self, other):
        if self.group is not other.group:
            raise RootDataError("elements of different Weyl groups")
        return WeylElement(self.group, self.group.mul(self.idx, other.idx))

    def inverse(self):
        return WeylElement(self.group, self.group.inv(self.idx))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.group is other.group and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.group), self.idx))

    def is_identity(self):
        return self.idx == 0

    def act(self, form):
        """Image of a LinearForm (or coefficient tuple) under the lattice action."""
        coeffs = form.coeffs if isinstance(form, LinearForm) else tuple(form)
        out = self.group.act_vector(self.idx, coeffs)
        return LinearForm(self.group.lattice, out) if isinstance(form, LinearForm) else out

    def act_poly(self, f):
        """Ring action on polynomials over the lattice generators."""
        return _matrix_hom(self.group, self.idx, f.gens).apply(f)

    def inversions(self):
        """Phi^+ intersected with w(Phi^-)."""
        rs = self.group.roots
        out = []
        for alpha in rs.positive_roots:
            pre = self.inverse().act(alpha)
            if not rs.is_positive(pre):
                out.append(alpha)
        return out

    def has_right_descent(self, i):
        rs = self.group.roots
        img = self.act(rs.simple_roots[i])
        return not rs.is_positive(img)

    def __repr__(self):
        return f"w[{'-'.join(str(i + 1) for i in self.word) or 'e'}]"


@lru_cache(maxsize=None)
def _matrix_hom_cached(group_id, idx, gens):
    """Weyl action as a coefficient homomorphism on a (possibly larger) generator set."""
    group = _GROUP_REGISTRY[group_id]
    mat = group.mats[idx]
    lat = group.lattice
    images = {
        name: LinearForm(gens, tuple(
            int(mat[lat.index(tname)][lat.index(name)]) if tname in lat._index else 0
            for tname in gens.names
        ))
        for name in lat.names
    }
    return CoefficientHom(gens, gens, images)


_GROUP_REGISTRY = {}


def _matrix_hom(group, idx, gens):
    gid = id(group)
    _GROUP_REGISTRY[gid] = group
    return _matrix_hom_cached(gid, idx, gens)


def enumerate_weyl(rs):
    """Spec operation: all Weyl elements by BFS over simple reflections."""
    return WeylGroup(rs)


def length(w):
    return w.length()


def bruhat_leq(v, w):
    """Bruhat order test via the lifting property along w's canonical word."""
    if v.group is not w.group:
        raise RootDataError("elements of different Weyl groups")
    if v.length() > w.length():
        return False
    group = v.group
    rs = group.roots
    uinv = np.array(group.mats[group.inv(v.idx)], dtype=np.int64)
    remaining = v.length()
    for s in w.word:
        if remaining == 0:
            return True
        alpha = np.array(rs.simple_roots[s].coeffs, dtype=np.int64)
        if group.is_negative_vector(uinv @ alpha):
            uinv = uinv @ np.array(group.simple_mats[s], dtype=np.int64)
            remaining -= 1
    return remaining == 0


def min_coset_rep(w, sigma):
    """Unique minimal representative of w W_P by right-descent descent."""
    cur = w
    changed = True
    while changed:
        changed = False
        for i in sigma:
            if cur.has_right_descent(i):
                cur = cur * cur.group.simple_reflection(i)
                changed = True
    return cur


def fundamental_coweight_vector(rs, outside):
    """Integer vector fixed by W_P and regular for the quotient W/W_P.

    Solves <v, alpha_i^vee> = 0 for i in Sigma and = positive for i outside,
    then clears denominators.
    """
    k = len(rs.simple_roots)
    n = len(rs.lattice)
    rows = []
    rhs = []
    for i, alpha in enumerate(rs.simple_roots):
        aa = _dot(rs.gram, alpha.coeffs, alpha.coeffs)
        row = []
        for j in range(n):
            basis = tuple(1 if t == j else 0 for t in range(n))
            row.append(2 * _dot(rs.gram, basis, alpha.coeffs) / aa)
        rows.append(row)
        rhs.append(Fraction(1 if i in outside else 0))
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise RootDataError("no lattice vector with the requested pairings")
    denom = 1
    for x in sol:
        denom = denom * x.denominator // __import__("math").gcd(denom, x.denominator)
    return tuple(int(x * denom) for x in sol)


@dataclass
class CosetTable:
    """Minimal-length representatives of W/W_P with quotient lengths."""

    group: WeylGroup
    sigma: tuple
    min_reps: list
    lp: list
    orbit_vectors: list
    vector_index: dict
    base_vector: tuple

    def __len__(self):
        return len(self.min_reps)

    def vertex_of_vector(self, vec):
        return self.vector_index[tuple(int(x) for x in vec)]

    def vertex_of_element(self, w):
        img = w.group.act_vector(w.idx, self.base_vector)
        return self.vector_index[img]


def coset_table(group, sigma):
    """BFS over the W-orbit of a Sigma-fixed regular weight; levels are l^P."""
    rs = group.roots
    sigma = tuple(sorted(sigma))
    outside = [i for i in range(len(rs.simple_roots)) if i not in sigma]
    lam = fundamental_coweight_vector(rs, outside)
    simple_mats = [np.array(m, dtype=np.int64) for m in group.simple_mats]

    start = tuple(int(x) for x in lam)
    seen = {start: (0, ())}
    frontier = [start]
    order = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            lvl, word = seen[vec]
            v = np.array(vec, dtype=np.int64)
            for i, m in enumerate(simple_mats):
                img = tuple(int(x) for x in m @ v)
                if img not in seen:
                    seen[img] = (lvl + 1, (i,) + word)
                    nxt.append(img)
                    order.append(img)
        frontier = nxt

    min_reps = []
    lp = []
    for vec in order:
        lvl, word = seen[vec]
        idx = 0
        for i in reversed(word):
            idx = group.mul(group.index[group.simple_mats[i].tobytes()], idx)
        w = WeylElement(group, idx)
        if w.length() != lvl:
            raise RootDataError("orbit BFS produced a non-minimal representative")
        min_reps.append(w)
        lp.append(lvl)
    return CosetTable(group, sigma, min_reps, lp, order,
                      {v: i for i, v in enumerate(order)}, start)


def lp_by_inversion_count(w, rs, sigma_subsystem):
    """l^P(wW_P) as |Phi^+ n w(Phi^- \\ -<Sigma>)|, computed directly."""
    sub_pos = {r.coeffs for r in sigma_subsystem.positive_roots}
    count = 0
    winv = w.inverse()
    for alpha in rs.positive_roots:
        pre = winv.act(alpha)
        if rs.is_positive(pre):
            continue
        if (-pre).coeffs in sub_pos:
            continue
        count += 1
    return count


# ---------------------------------------------------------------------------
# Built-in Cartan data
# ---------------------------------------------------------------------------

def _frac_matrix(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _gram_from_embedding(vectors):
    """Gram matrix of basis vectors given by exact ambient coordinates."""
    n = len(vectors)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum(Fraction(a) * Fraction(b) for a, b in zip(vectors[i], vectors[j])))
        out.append(tuple(row))
    return tuple(out)


def _e6_from_e_coords(v):
    """Convert an R^8 weight (x6 = x7 = -x8) to the (t1..t5, x) basis."""
    v = [Fraction(x) for x in v]
    if not (v[5] == v[6] == -v[7]):
        raise RootDataError("vector outside the E6 weight subspace")
    a = v[:5]
    c = v[7]
    s = sum(a)
    shift = Fraction(3, 2) * c - s / 2
    coeffs = [ai + shift for ai in a] + [s - 3 * c]
    return tuple(coeffs)


def _e6_weight_int(v):
    return LinearForm(_E6_LATTICE, _as_int_vector(_e6_from_e_coords(v), "E6 weight"))


_E6_LATTICE = GeneratorSet.of("t1", "t2", "t3", "t4", "t5", "x")

_E6_E_COORDS = {
    "t0": (Fraction(1, 2),) * 5 + (Fraction(1, 6), Fraction(1, 6), Fraction(-1, 6)),
    "x": (Fraction(1, 2),) * 5 + (Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)),
    "tbar": (0, 0, 0, 0, 0, Fraction(-2, 3), Fraction(-2, 3), Fraction(2, 3)),
}
for _i in range(1, 6):
    _E6_E_COORDS[f"t{_i}"] = tuple(
        (1 if _j == _i - 1 else 0) + (Fraction(-1, 3) if _j in (5, 6) else (Fraction(1, 3) if _j == 7 else 0))
        for _j in range(8)
    )


def e6_weight_from_e(v):
    """Public helper: exact conversion of an R^8 weight into the E6 lattice basis."""
    return _e6_weight_int(v)


def e6_weight_coords(v):
    """Rational coordinates in the (t1..t5,x) basis, without integrality demand."""
    return _e6_from_e_coords(v)


def _build_e6():
    e = _E6_E_COORDS
    basis_embed = [e["t1"], e["t2"], e["t3"], e["t4"], e["t5"], e["x"]]
    gram = _gram_from_embedding(basis_embed)
    alpha1 = tuple(Fraction(s, 2) for s in (1, -1, -1, -1, -1, -1, -1, 1))
    alpha2 = (1, 1, 0, 0, 0, 0, 0, 0)
    simples = [alpha1, alpha2]
    for i in range(3, 7):
        simples.append(tuple(1 if j == i - 2 else (-1 if j == i - 3 else 0) for j in range(8)))
    simple_forms = tuple(_e6_weight_int(a) for a in simples)
    weights = {k: _e6_weight_int(vec) for k, vec in e.items()}
    return CartanDatum("e6", _E6_LATTICE, simple_forms, gram, weights)


def _build_f4():
    lattice = GeneratorSet.of("h", "t2", "t3", "t4")

    def from_t(v):
        a = [Fraction(x) for x in v]
        coeffs = (2 * a[0], a[0] + a[1], a[0] + a[2], a[0] + a[3])
        return LinearForm(lattice, _as_int_vector(coeffs, "F4 weight"))

    basis_embed = [(Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)),
                   (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    gram = _gram_from_embedding(basis_embed)
    simples = (
        from_t((0, 1, -1, 0)),
        from_t((0, 0, 1, -1)),
        from_t((0, 0, 0, 1)),
        from_t((Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2))),
    )
    weights = {
        "t1": from_t((1, 0, 0, 0)),
        "t2": from_t((0, 1, 0, 0)),
        "t3": from_t((0, 0, 1, 0)),
        "t4": from_t((0, 0, 0, 1)),
    }
    return CartanDatum("f4", lattice, simples, gram, weights)


def f4_weight_from_t(v):
    lattice = builtin_datum("f4").lattice
    a = [Fraction(x) for x in v]
    coeffs = (2 * a[0], a[0] + a[1], a[0] + a[2], a[0] + a[3])
    return LinearForm(lattice, _as_int_vector(coeffs, "F4 weight"))


def _orthonormal_datum(name, var_names, simple_coords, weights=None):
    lattice = GeneratorSet.of(*var_names)
    n = len(var_names)
    gram = _frac_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])
    simples = tuple(LinearForm(lattice, tuple(c)) for c in simple_coords)
    w = {}
    for i, nm in enumerate(var_names):
        w[nm] = LinearForm(lattice, tuple(1 if j == i else 0 for j in range(n)))
    if weights:
        w.update(weights)
    return CartanDatum(name, lattice, simples, gram, w)


def _fundamental_datum(name, cartan):
    """Simply-laced datum realized on the fundamental-weight basis."""
    k = len(cartan)
    lattice = GeneratorSet.of(*(f"w{i + 1}" for i in range(k)))
    gram = tuple(tuple(x for x in row) for row in linalg.invert(cartan))
    simples = tuple(LinearForm(lattice, tuple(cartan[i][j] for i in range(k))) for j in range(k))
    return CartanDatum(name, lattice, simples, gram)


def _a_cartan(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


_BUILTIN_CACHE = {}


def builtin_datum(name):
    name = name.lower()
    if name in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[name]
    if name == "a1":
        datum = _fundamental_datum("a1", _a_cartan(1))
    elif name == "a2":
        datum = _fundamental_datum("a2", _a_cartan(2))
    elif name == "a3":
        datum = _fundamental_datum("a3", _a_cartan(3))
    elif name == "b2":
        datum = _orthonormal_datum("b2", ["e1", "e2"], [(1, -1), (0, 1)])
    elif name == "d4":
        datum = _orthonormal_datum("d4", ["e1", "e2", "e3", "e4"],
                                   [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)])
    elif name == "d5":
        datum = _orthonormal_datum("d5", ["t1", "t2", "t3", "t4", "t5"],
                                   [(1, -1, 0, 0, 0), (0, 1, -1, 0, 0), (0, 0, 1, -1, 0),
                                    (0, 0, 0, 1, -1), (0, 0, 0, 1, 1)])
    elif name == "f4":
        datum = _build_f4()
    elif name == "e6":
        datum = _build_e6()
    elif name in ("sp1xsp1", "sp1sp1"):
        datum = _orthonormal_datum("sp1xsp1", ["t1", "t2"], [(2, 0), (0, 2)])
    else:
        raise RootDataError(f"unknown built-in Cartan datum {name!r}")
    _BUILTIN_CACHE[name] = datum
    return datum


BUILTIN_NAMES = ("a1", "a2", "a3", "b2", "d4", "d5", "f4", "e6", "sp1xsp1")

_RS_CACHE = {}
_WG_CACHE = {}


def builtin_roots(name):
    name = name.lower()
    if name not in _RS_CACHE:
        _RS_CACHE[name] = RootSystem.from_datum(builtin_datum(name))
    return _RS_CACHE[name]


def builtin_weyl(name):
    name = name.lower()
    if name not in _WG_CACHE:
        _WG_CACHE[name] = WeylGroup(builtin_roots(name))
    return _WG_CACHE[name]
