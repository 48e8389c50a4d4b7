"""Cell statistics for intersections of Schubert cells with semi-infinite
orbits.

Cells are tracked as pairs (r, s), standing for a product of an affine
space of dimension r and a torus of dimension s, i.e. point count
q^r (q-1)^s.  Two independent computations live here: a Deodhar-style
enumeration of distinguished subexpressions checked against the
classical R-polynomial recursion, and the retraction walk through a
gallery type, whose slot-by-slot branching produces the cell multisets.
The binding global test is that all cells of a fixed dominant target sum
to the point count of the open Schubert cell.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .coxeter import AffineElement
from .gallery import build_gamma_mu
from .poly import LaurentPoly, ONE, Q


@dataclass(frozen=True)
class CellShape:
    affine_dim: int
    torus_dim: int

    @property
    def total_dim(self):
        return self.affine_dim + self.torus_dim

    def point_count(self):
        return LaurentPoly.q_power(self.affine_dim) * (Q - 1) ** self.torus_dim


def shapes_point_count(shapes):
    total = LaurentPoly()
    for shape in shapes:
        total = total + shape.point_count()
    return total


# ---------------------------------------------------------------------------
# nonemptiness


def intersection_nonempty(ctx, mu, nu):
    rel = ctx.rel
    dom, _ = rel.dominant_rep(tuple(map(Fraction, nu)))
    return rel.dominance_leq(dom, tuple(map(Fraction, mu)))


# ---------------------------------------------------------------------------
# Deodhar cells and the R-polynomial oracle


@dataclass(frozen=True)
class Subexpression:
    word: tuple
    trace: tuple  # element keys along the walk
    moves: tuple  # 'up' / 'down' / 'stay' per letter

    @property
    def shape(self):
        return CellShape(
            self.moves.count("down"), self.moves.count("stay")
        )


def distinguished_subexpressions(ctx, word):
    """All distinguished subexpressions of the word, grouped by endpoint.

    A trace must move down whenever the next letter would shorten it;
    stays are only possible at lengthening letters."""
    by_endpoint = {}

    def rec(i, sigma, moves):
        if i == len(word):
            sub = Subexpression(tuple(word), (sigma.key,), tuple(moves))
            by_endpoint.setdefault(sigma.key, []).append(sub)
            return
        s = ctx.simple_reflections[word[i]]
        moved = sigma * s
        if ctx.length(moved) < ctx.length(sigma):
            rec(i + 1, moved, moves + ["down"])
        else:
            rec(i + 1, moved, moves + ["up"])
            rec(i + 1, sigma, moves + ["stay"])

    rec(0, ctx.identity, [])
    return by_endpoint


def deodhar_cells(ctx, word, v):
    """Cell shapes of the Deodhar decomposition attached to a reduced word
    and an endpoint; empty when the endpoint is not below the word."""
    by_endpoint = distinguished_subexpressions(ctx, word)
    return [sub.shape for sub in by_endpoint.get(v.key, [])]


def r_polynomial(ctx, v, w):
    """Kazhdan-Lusztig R-polynomial by the classical recursion."""
    cache = ctx.rel._caches.setdefault("rpoly", {})
    key = (v.key, w.key)
    if key in cache:
        return cache[key]
    if v == w:
        out = ONE
    elif not ctx.bruhat_leq(v, w):
        out = LaurentPoly()
    else:
        i = ctx.descents_right(w)[0]
        s = ctx.simple_reflections[i]
        ws = w * s
        vs = v * s
        if ctx.length(vs) < ctx.length(v):
            out = r_polynomial(ctx, vs, ws)
        else:
            out = (Q - 1) * r_polynomial(ctx, v, ws) + Q * r_polynomial(ctx, vs, ws)
    cache[key] = out
    return out


# ---------------------------------------------------------------------------
# the retraction walk: cells of every gallery target at once


def gallery_cells(ctx, gamma_mu):
    """All cells of the open Schubert cell of the gallery target,
    grouped by the target of the retracted gallery.

    Returns a dict target -> list of CellShape.  One cell per complete
    branch of the walk: crossings away from the antidominant direction
    contribute affine coordinates, positive folds torus coordinates."""
    gtype = gamma_mu.gtype
    r_slots = gtype.num_large - 1
    out = {}

    def record(prefix, r, s):
        point = prefix.apply(ctx.standard_face_point(gtype.target_type))
        target = tuple(int(x) for x in point)
        out.setdefault(target, []).append(CellShape(r, s))

    if r_slots < 0:
        origin = (Fraction(0),) * ctx.rank
        out[tuple(int(x) for x in origin)] = [CellShape(0, 0)]
        return out

    def walk(j, prefix, r, s):
        if j > r_slots:
            record(prefix, r, s)
            return
        tau = gtype.taus[j - 1]
        letters = tuple(sorted(gtype.small_types[j]))
        word = ctx.reduced_word_in(tau, letters)

        def step(i, fold, carrier, r, s):
            if i == len(word):
                walk(j + 1, fold * (carrier), r, s)
                return
            letter = word[i]
            unfolded = ctx.wall_image(carrier, ctx.alcove_walls[letter])
            faced = ctx.wall_image(fold, unfolded)
            current = fold.apply(carrier.apply(ctx.base_point))
            side = faced.side(current)
            if side == 0:
                raise RuntimeError("walk point landed on a wall")
            nxt = carrier * ctx.simple_reflections[letter]
            if side < 0:
                step(i + 1, fold, nxt, r + 1, s)
            else:
                step(i + 1, fold, nxt, r, s)
                step(i + 1, ctx.reflection(faced) * fold, nxt, r, s + 1)

        step(0, ctx.identity, prefix, r, s)

    big0 = tuple(sorted(gtype.small_types[0]))
    small0 = tuple(sorted(gtype.large_types[0]))
    base0 = ctx.standard_face_point(gtype.large_types[0])
    for rep in ctx.min_coset_reps(big0, small0):
        point = rep.apply(base0)
        free = 0
        for a in ctx.rel.positive_roots:
            if la.dot(a.functional, point) > 0:
                free += 1
        walk(1, rep, free, 0)
    return out


def cell_shapes(ctx, mu, nu, seed=0):
    """Cell multiset of the intersection indexed by (mu, nu)."""
    cells = _cells_for_mu(ctx, tuple(int(x) for x in mu), seed)
    return list(cells.get(tuple(int(x) for x in nu), []))


def _cells_for_mu(ctx, mu, seed=0):
    cache = ctx.rel._caches.setdefault("gallery_cells", {})
    key = (mu, seed)
    if key not in cache:
        gm = build_gamma_mu(ctx, mu, seed=seed)
        cache[key] = gallery_cells(ctx, gm)
    return cache[key]


def grassmannian_points(ctx, mu):
    """Point count polynomial of the open Schubert cell: one power of q
    per Iwahori orbit, graded by the length of its minimal representative."""
    rel = ctx.rel
    mu = tuple(int(x) for x in mu)
    finite = tuple(
        i for i, w in enumerate(ctx.alcove_walls) if w.level == 0
    )
    t_mu = ctx.translation(mu)
    seen = {}
    for w in rel.weyl_group():
        u = AffineElement((0,) * ctx.rank, w)
        rep = ctx.min_coset_rep(u * t_mu, finite)
        seen[rep.key] = ctx.length(rep)
    total = LaurentPoly()
    for length in seen.values():
        total = total + LaurentPoly.q_power(length)
    return total
