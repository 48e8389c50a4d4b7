"""Affine and Iwahori-Weyl group machinery over the echelonnage
hyperplane arrangement.

Elements of the extended affine group are pairs (translation, finite
part); lengths are computed geometrically by counting the arrangement
hyperplanes separating the fundamental alcove from its image.  This is
robust for arbitrary rational jumps, and makes the Coxeter-theoretic
operations (reduced words, Bruhat order, coset representatives) purely
combinatorial consequences of the arrangement.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la


class InfiniteError(Exception):
    """Requested enumeration of an infinite group."""


@dataclass(frozen=True)
class Wall:
    """Affine hyperplane {x : <root, x> = level}, root stored positive."""

    root: tuple  # positive root functional
    level: Fraction

    def side(self, point):
        """+1, 0, -1 according to the sign of <root, point> - level."""
        v = la.dot(self.root, point) - self.level
        return (v > 0) - (v < 0)


class AffineElement:
    """An element x = t_nu w of the (extended) affine Weyl group,
    acting on the apartment by x(p) = nu + w(p)."""

    __slots__ = ("trans", "lin", "_key")

    def __init__(self, trans, lin):
        self.trans = tuple(Fraction(t) for t in trans)
        self.lin = tuple(tuple(int(c) for c in row) for row in lin)
        self._key = (self.trans, self.lin)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"AffineElement(trans={self.trans}, lin={self.lin})"

    def __mul__(self, other):
        # (t_a u)(t_b v) = t_{a + u b} (u v)
        n = len(self.trans)
        moved = tuple(
            sum(Fraction(self.lin[i][j]) * other.trans[j] for j in range(n))
            for i in range(n)
        )
        lin = tuple(
            tuple(sum(self.lin[i][k] * other.lin[k][j] for k in range(n))
                  for j in range(n))
            for i in range(n)
        )
        return AffineElement(la.vec_add(self.trans, moved), lin)

    def inverse(self):
        n = len(self.trans)
        cols = [
            la.solve(self.lin, tuple(1 if i == j else 0 for i in range(n)))
            for j in range(n)
        ]
        inv = tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
        back = tuple(
            -sum(Fraction(inv[i][j]) * self.trans[j] for j in range(n))
            for i in range(n)
        )
        return AffineElement(back, inv)

    def apply(self, point):
        n = len(self.trans)
        return tuple(
            self.trans[i] + sum(Fraction(self.lin[i][j]) * point[j] for j in range(n))
            for i in range(n)
        )

    def is_translation(self):
        n = len(self.trans)
        return self.lin == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Facet:
    """A facet of the arrangement: its type (indices into the simple
    affine reflections) and the minimal coset representative moving the
    standard face of that type onto it."""

    ftype: frozenset
    rep: AffineElement


def _strict_count_between(lo, hi, step):
    """Number of points of step*Z strictly between lo and hi."""
    if lo > hi:
        lo, hi = hi, lo
    a = Fraction(lo) / step
    b = Fraction(hi) / step
    first = math.floor(a) + 1
    last = math.ceil(b) - 1
    return max(0, last - first + 1)


class AffineContext:
    """The arrangement attached to a relative root datum: fundamental
    alcove, simple affine reflections, lengths, words, cosets, facets."""

    def __init__(self, rel):
        self.rel = rel
        self.rank = rel.rank
        self._positive = {a.functional: a for a in rel.positive_roots}
        self._build_alcove()
        self._len_cache = {}
        self._bruhat_cache = {}
        self._group_cache = {}
        self._coset_cache = {}
        self._omega = None

    # -- construction of the fundamental alcove ---------------------------

    def _build_alcove(self):
        rel = self.rel
        simple = rel.simple
        # interior direction: pair to 1 against every simple root
        rows = [a.functional for a in simple]
        if len(rows) != self.rank:
            raise ValueError("datum is not semisimple")
        v = la.solve(la.mat(rows), tuple(1 for _ in rows))
        ratios = [la.dot(a.functional, v) / a.jump for a in rel.positive_roots]
        c = Fraction(1, 2) / max(ratios)
        self.base_point = la.vec_scale(c, v)

        components = self._components()
        if len(components) != 1:
            raise ValueError("reducible relative data is not supported here")
        walls = [Wall(a.functional, Fraction(0)) for a in simple]
        comp_roots = list(rel.positive_roots)
        best = max(comp_roots, key=lambda a: la.dot(a.functional, v) / a.jump)
        ties = [
            a
            for a in comp_roots
            if la.dot(a.functional, v) / a.jump == la.dot(best.functional, v) / best.jump
        ]
        if len(ties) != 1:
            raise ValueError("jump table does not produce a simplicial alcove")
        walls.append(Wall(best.functional, best.jump))
        self.alcove_walls = tuple(walls)

        # vertices: drop one wall at a time and solve the rest
        verts = []
        for drop in range(len(walls)):
            keep = [w for i, w in enumerate(walls) if i != drop]
            m = la.mat([w.root for w in keep])
            rhs = tuple(w.level for w in keep)
            verts.append(la.solve(m, rhs))
        self.alcove_vertices = tuple(verts)

        refs = []
        for w in walls:
            refs.append(self.reflection(w))
        self.simple_reflections = tuple(refs)
        n = self.rank
        self.identity = AffineElement(
            (0,) * n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        )

    def _components(self):
        simple = self.rel.simple
        n = len(simple)
        adj = {i: set() for i in range(n)}
        for i in range(n):
            for j in range(n):
                if i != j and la.dot(simple[i].functional, simple[j].coroot) != 0:
                    adj[i].add(j)
        seen, comps = set(), []
        for i in range(n):
            if i in seen:
                continue
            comp, stack = [], [i]
            seen.add(i)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    # -- walls --------------------------------------------------------------

    def jump_of(self, root_functional):
        return self._positive[root_functional].jump

    def positive_form(self, functional, level):
        """Normalize a (root, level) pair so the root is positive."""
        if functional in self._positive:
            return Wall(functional, Fraction(level))
        neg = tuple(-x for x in functional)
        if neg in self._positive:
            return Wall(neg, -Fraction(level))
        raise ValueError("functional is not a relative root")

    def reflection(self, wall):
        """The reflection across the given wall as an AffineElement."""
        root = self._positive[wall.root]
        n = self.rank
        cols = []
        for j in range(n):
            e = tuple(Fraction(1 if i == j else 0) for i in range(n))
            cols.append(self.rel.reflect(root, e))
        lin = tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
        trans = la.vec_scale(wall.level, root.coroot)
        return AffineElement(trans, lin)

    def walls_through(self, point):
        """All arrangement walls containing the given point."""
        out = []
        for a in self.rel.positive_roots:
            v = la.dot(a.functional, point)
            if (v / a.jump).denominator == 1:
                out.append(Wall(a.functional, v))
        return out

    def wall_image(self, g, wall):
        """Image of a wall under an affine element, positively normalized.

        The image of {<a, x> = m} under g is {<a o g^{-1}, x> = m + <a o
        g^{-1}, g(0)>}, computed here through the inverse's affine form.
        """
        n = self.rank
        ginv = g.inverse()
        moved = tuple(
            sum(wall.root[i] * Fraction(ginv.lin[i][j]) for i in range(n))
            for j in range(n)
        )
        level = wall.level - sum(
            wall.root[i] * ginv.trans[i] for i in range(n)
        )
        return self.positive_form(moved, level)

    # -- lengths and words ---------------------------------------------------

    def length(self, x):
        key = x.key
        if key in self._len_cache:
            return self._len_cache[key]
        p = self.base_point
        q = x.apply(p)
        total = 0
        for a in self.rel.positive_roots:
            total += _strict_count_between(
                la.dot(a.functional, p), la.dot(a.functional, q), a.jump
            )
        self._len_cache[key] = total
        return total

    def descents_right(self, x, letters=None):
        idx = range(len(self.simple_reflections)) if letters is None else letters
        lx = self.length(x)
        return [i for i in idx if self.length(x * self.simple_reflections[i]) < lx]

    def reduced_word(self, x):
        """Returns (word, omega) with x = omega * product(s_i for i in word)
        and omega of length zero."""
        word = []
        cur = x
        while self.length(cur) > 0:
            i = self.descents_right(cur)[0]
            word.append(i)
            cur = cur * self.simple_reflections[i]
        word.reverse()
        return word, cur

    def product_of_word(self, word, omega=None):
        out = self.identity if omega is None else omega
        for i in word:
            out = out * self.simple_reflections[i]
        return out

    def reduced_word_in(self, x, letters):
        """Reduced word of x inside the standard parabolic on `letters`."""
        word = []
        cur = x
        while True:
            des = self.descents_right(cur, letters)
            if not des:
                break
            word.append(des[0])
            cur = cur * self.simple_reflections[des[0]]
        if cur != self.identity:
            raise ValueError("element does not lie in the parabolic subgroup")
        word.reverse()
        return word

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, v, w):
        key = (v.key, w.key)
        if key in self._bruhat_cache:
            return self._bruhat_cache[key]
        lv, lw = self.length(v), self.length(w)
        if lv > lw:
            res = False
        elif lw == 0:
            res = v == w
        else:
            i = self.descents_right(w)[0]
            s = self.simple_reflections[i]
            ws = w * s
            vs = v * s
            if self.length(vs) < lv:
                res = self.bruhat_leq(vs, ws)
            else:
                res = self.bruhat_leq(v, ws)
        self._bruhat_cache[key] = res
        return res

    # -- parabolic subgroups and cosets ----------------------------------------

    def parabolic_elements(self, letters):
        """All elements of the standard parabolic generated by `letters`."""
        letters = tuple(sorted(letters))
        if letters in self._group_cache:
            return self._group_cache[letters]
        if len(letters) == len(self.simple_reflections):
            raise InfiniteError("the full affine group is infinite")
        gens = [self.simple_reflections[i] for i in letters]
        seen = {self.identity.key: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y.key not in seen:
                        seen[y.key] = y
                        nxt.append(y)
            frontier = nxt
            if len(seen) > 300000:
                raise InfiniteError("parabolic subgroup cap exceeded")
        out = sorted(seen.values(), key=lambda e: (self.length(e), e.key))
        self._group_cache[letters] = out
        return out

    def min_coset_rep(self, x, letters):
        """Minimal representative of x W_letters."""
        cur = x
        while True:
            des = self.descents_right(cur, letters)
            if not des:
                return cur
            cur = cur * self.simple_reflections[des[0]]

    def min_coset_reps(self, big, small):
        """Minimal-length representatives of W_big / W_small."""
        big = tuple(sorted(big))
        small = tuple(sorted(small))
        if not set(small) <= set(big):
            raise ValueError("small type must be contained in big type")
        key = (big, small)
        if key in self._coset_cache:
            return self._coset_cache[key]
        reps = {self.identity.key: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for r in frontier:
                for i in big:
                    cand = self.min_coset_rep(self.simple_reflections[i] * r, small)
                    if cand.key not in reps:
                        reps[cand.key] = cand
                        nxt.append(cand)
            frontier = nxt
        out = sorted(reps.values(), key=lambda e: (self.length(e), e.key))
        self._coset_cache[key] = out
        return out

    # -- facets -----------------------------------------------------------------

    def fold_into_alcove(self, point):
        """Returns (g, q) with q = g(point) in the closed fundamental alcove."""
        g = self.identity
        q = tuple(Fraction(x) for x in point)
        guard = 0
        while True:
            violated = None
            for i, w in enumerate(self.alcove_walls):
                v = la.dot(w.root, q) - w.level
                inside = v >= 0 if w.level == 0 else v <= 0
                if not inside:
                    violated = i
                    break
            if violated is None:
                return g, q
            s = self.simple_reflections[violated]
            q = s.apply(q)
            g = s * g
            guard += 1
            if guard > 100000:
                raise RuntimeError("alcove folding did not terminate")

    def type_of_point(self, point):
        """Type of the facet containing `point` in its relative interior."""
        _, q = self.fold_into_alcove(point)
        return frozenset(
            i for i, w in enumerate(self.alcove_walls) if la.dot(w.root, q) == w.level
        )

    def standard_face_point(self, ftype):
        """Barycenter of the face of the fundamental alcove of given type."""
        verts = [
            v
            for i, v in enumerate(self.alcove_vertices)
            if i not in ftype
        ]
        n = len(verts)
        return tuple(sum(col) / n for col in zip(*verts))

    def facet_of_point(self, point):
        g, _ = self.fold_into_alcove(point)
        ftype = self.type_of_point(point)
        rep = self.min_coset_rep(g.inverse(), tuple(sorted(ftype)))
        return Facet(ftype, rep)

    def facet_barycenter(self, facet):
        return facet.rep.apply(self.standard_face_point(facet.ftype))

    # -- length-zero subgroup -----------------------------------------------------

    def omega_elements(self):
        """All length-zero elements of the extended affine group."""
        if self._omega is not None:
            return self._omega
        rel = self.rel
        out = []
        seen = set()
        p0 = self.base_point
        for w in rel.weyl_group():
            wp = rel.act_weyl(w, p0)
            # need nu in X with nu + w(p0) inside the open alcove
            lo = [math.floor(min(v[i] for v in self.alcove_vertices) - wp[i]) for i in range(self.rank)]
            hi = [math.ceil(max(v[i] for v in self.alcove_vertices) - wp[i]) for i in range(self.rank)]
            for nu in _integer_box(lo, hi):
                x = AffineElement(nu, w)
                if x.key not in seen and self.length(x) == 0:
                    seen.add(x.key)
                    out.append(x)
        self._omega = out
        return out

    def translation(self, nu):
        n = self.rank
        return AffineElement(
            tuple(nu), tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        )


def _integer_box(lo, hi):
    if not lo:
        yield ()
        return
    for first in range(lo[0], hi[0] + 1):
        for rest in _integer_box(lo[1:], hi[1:]):
            yield (first,) + rest
