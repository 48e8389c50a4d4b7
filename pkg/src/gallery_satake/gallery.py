"""Combinatorial galleries of a fixed type.

A gallery of types is extracted from a minimal gallery joining the
origin to a dominant target, built by walking a generic straight
segment and recording the walls it crosses.  Galleries of that type are
coset tuples; folds, positivity, the load-bearing dimension count and
duals are all computed from exact facet interior points.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .coxeter import Wall


class NotPositivelyFolded(Exception):
    pass


@dataclass(frozen=True)
class GalleryType:
    """Type data of the fixed minimal gallery: alternating small/large
    facet types, the target vertex type, and the straight-step
    representatives tau_j for the slots j >= 1."""

    mu: tuple
    small_types: tuple   # types of the small facets Gamma'_0 .. Gamma'_r
    large_types: tuple   # types of the large facets Gamma_0 .. Gamma_r
    target_type: frozenset
    taus: tuple          # tau_j for j = 1..r

    @property
    def num_large(self):
        return len(self.large_types)


class Gallery:
    """A combinatorial gallery, stored as minimal coset representatives
    together with exact interior points of all its facets."""

    __slots__ = ("gtype", "cosets", "small_points", "large_points", "_key")

    def __init__(self, gtype, cosets, small_points, large_points):
        self.gtype = gtype
        self.cosets = tuple(cosets)
        self.small_points = tuple(small_points)
        self.large_points = tuple(large_points)
        self._key = (id(gtype), tuple(c.key for c in self.cosets))

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def target(self):
        """Target vertex as a lattice point."""
        point = self.small_points[-1]
        if not la.is_integral(point):
            raise ValueError("gallery target is not a lattice point")
        return tuple(int(x) for x in point)

    def __repr__(self):
        return f"Gallery(target={self.small_points[-1]}, cosets={len(self.cosets)})"


def _prefixes(ctx, gtype, cosets):
    out = []
    cur = ctx.identity
    for c in cosets:
        cur = cur * c
        out.append(cur)
    return out


def gallery_from_cosets(ctx, gtype, cosets):
    """Realize a coset tuple as facet interior points."""
    r = gtype.num_large - 1
    if r < 0:
        origin = (Fraction(0),) * ctx.rank
        return Gallery(gtype, (), (origin,), ())
    prefixes = _prefixes(ctx, gtype, cosets)
    large_points = [
        prefixes[j].apply(ctx.standard_face_point(gtype.large_types[j]))
        for j in range(r + 1)
    ]
    small_points = [(Fraction(0),) * ctx.rank]
    for j in range(1, r + 1):
        small_points.append(
            prefixes[j - 1].apply(ctx.standard_face_point(gtype.small_types[j]))
        )
    small_points.append(prefixes[r].apply(ctx.standard_face_point(gtype.target_type)))
    return Gallery(gtype, cosets, small_points, large_points)


def gallery_from_points(ctx, gtype, small_points, large_points):
    """Recover the coset tuple from facet interior points.

    Used after root operators and folds, which act facetwise; the coset
    representatives are re-normalized to minimal length slot by slot.
    Facets are matched through their barycenters, which transform
    equivariantly under the affine group.
    """
    r = gtype.num_large - 1
    if r < 0:
        return Gallery(gtype, (), small_points, large_points)
    cosets = []
    prefix = ctx.identity
    for j in range(r + 1):
        big = tuple(sorted(gtype.small_types[j]))
        small = tuple(sorted(gtype.large_types[j]))
        inv = prefix.inverse()
        local = inv.apply(large_points[j])
        facet = ctx.facet_of_point(local)
        if facet.ftype != gtype.large_types[j]:
            raise ValueError("facet sequence does not match the gallery type")
        bary = ctx.facet_barycenter(facet)
        base = ctx.standard_face_point(gtype.large_types[j])
        found = None
        for rep in ctx.min_coset_reps(big, small):
            if rep.apply(base) == bary:
                found = rep
                break
        if found is None:
            raise ValueError("facet sequence is not a gallery of this type")
        cosets.append(found)
        prefix = prefix * found
    return Gallery(gtype, cosets, small_points, large_points)


def enumerate_galleries(ctx, gtype, prefix_filter=None):
    """All combinatorial galleries of the given type, lazily.

    The coset tuples run over the product of minimal representatives;
    prefix_filter, when given, receives the partial coset tuple and may
    return False to prune the whole block (used to split work)."""
    r = gtype.num_large - 1
    if r < 0:
        yield gallery_from_cosets(ctx, gtype, ())
        return
    slot_reps = slot_representatives(ctx, gtype)

    def rec(j, chosen):
        if prefix_filter is not None and not prefix_filter(chosen):
            return
        if j > r:
            yield gallery_from_cosets(ctx, gtype, chosen)
            return
        for rep in slot_reps[j]:
            yield from rec(j + 1, chosen + (rep,))

    yield from rec(0, ())


def slot_representatives(ctx, gtype):
    """Minimal coset representatives available in each slot."""
    r = gtype.num_large - 1
    out = []
    for j in range(r + 1):
        big = tuple(sorted(gtype.small_types[j]))
        small = tuple(sorted(gtype.large_types[j]))
        out.append(ctx.min_coset_reps(big, small))
    return out


def count_galleries(ctx, gtype):
    total = 1
    for reps in slot_representatives(ctx, gtype):
        total *= len(reps)
    return total


# ---------------------------------------------------------------------------
# construction of the fixed minimal gallery


def build_gamma_mu(ctx, mu, seed=0):
    """The fixed minimal gallery from the origin to a dominant mu.

    A generic straight segment inside the span cut out by the walls
    through the direction of mu is walked from near 0 to near mu; the
    crossed walls give the facet sequence, whose types and straight
    representatives constitute the gallery type.  Deterministic for a
    fixed seed; different seeds may pick different (equivalent) types.
    """
    rel = ctx.rel
    mu = tuple(int(x) for x in mu)
    if not rel.is_dominant(mu):
        raise ValueError("mu must be dominant")
    if not any(mu):
        origin = (Fraction(0),) * ctx.rank
        gtype = GalleryType(mu, (frozenset(_vertex_type(ctx, origin)),), (), _vertex_type(ctx, origin), ())
        return gallery_from_cosets(ctx, gtype, ())

    perp = [a for a in rel.positive_roots if a.pair(mu) == 0]
    basis = _null_space([a.functional for a in perp], ctx.rank)

    rng = random.Random(seed)
    for attempt in range(64):
        # independent perturbations at the two ends keep interior points
        # of the segment away from low-dimensional faces
        starts = [Fraction(rng.randrange(1, 10**6), 10**7) for _ in basis]
        ends = [Fraction(rng.randrange(1, 10**6), 10**7) for _ in basis]
        d0 = la.vec_add(
            tuple(map(Fraction, mu)),
            tuple(sum(c * b[i] for c, b in zip(starts, basis)) for i in range(ctx.rank)),
        )
        d1 = la.vec_add(
            tuple(map(Fraction, mu)),
            tuple(sum(c * b[i] for c, b in zip(ends, basis)) for i in range(ctx.rank)),
        )
        p0 = la.vec_scale(Fraction(1, 10**8), d0)
        p1 = la.vec_sub(tuple(map(Fraction, mu)), la.vec_scale(Fraction(1, 10**9), d1))
        events = _crossing_events(ctx, p0, p1, basis)
        if events is None:
            continue
        return _gallery_from_walk(ctx, mu, p0, p1, events)
    raise RuntimeError("could not find a generic segment (exhausted retries)")


def _vertex_type(ctx, point):
    return ctx.type_of_point(point)


def _null_space(functionals, n):
    if not functionals:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    rows = [list(map(Fraction, f)) for f in functionals]
    # row reduce
    pivots = []
    rank_rows = 0
    for col in range(n):
        piv = next((r for r in range(rank_rows, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank_rows], rows[piv] = rows[piv], rows[rank_rows]
        inv = 1 / rows[rank_rows][col]
        rows[rank_rows] = [x * inv for x in rows[rank_rows]]
        for r in range(len(rows)):
            if r != rank_rows and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank_rows])]
        pivots.append(col)
        rank_rows += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def _crossing_events(ctx, p0, p1, basis):
    """Ordered wall crossings of the open segment, or None if degenerate.

    Several walls may be crossed at the same time when the segment runs
    inside a proper subspace: that is fine exactly when they all cut the
    subspace in the same hyperplane, i.e. their restricted functionals
    are proportional."""
    rel = ctx.rel
    events = {}
    for a in rel.positive_roots:
        v0 = la.dot(a.functional, p0)
        v1 = la.dot(a.functional, p1)
        if v0 == v1:
            continue
        lo, hi = (v0, v1) if v0 < v1 else (v1, v0)
        step = a.jump
        first = math.floor(lo / step) + 1
        last = math.ceil(hi / step) - 1
        for k in range(first, last + 1):
            level = k * step
            t = (level - v0) / (v1 - v0)
            if t <= 0 or t >= 1:
                return None
            events.setdefault(t, []).append(Wall(a.functional, level))
    for t, walls in events.items():
        if len(walls) > 1 and not _proportional_on_subspace(walls, basis):
            return None
    return sorted((t, walls) for t, walls in events.items())


def _proportional_on_subspace(walls, basis):
    restricted = [
        tuple(la.dot(w.root, b) for b in basis) for w in walls
    ]
    pivot = restricted[0]
    k = next(i for i, x in enumerate(pivot) if x != 0)
    for other in restricted[1:]:
        if other[k] == 0:
            return False
        ratio = other[k] / pivot[k]
        if any(o != ratio * p for o, p in zip(other, pivot)):
            return False
    return True


def _gallery_from_walk(ctx, mu, p0, p1, events):
    ts = [t for t, _ in events]
    midpoints = []
    cuts = [Fraction(0)] + ts + [Fraction(1)]
    for i in range(len(cuts) - 1):
        tm = (cuts[i] + cuts[i + 1]) / 2
        midpoints.append(la.vec_add(p0, la.vec_scale(tm, la.vec_sub(p1, p0))))

    large_points = midpoints
    small_points = [(Fraction(0),) * ctx.rank]
    small_points += [
        la.vec_add(p0, la.vec_scale(t, la.vec_sub(p1, p0))) for t in ts
    ]
    small_points.append(tuple(map(Fraction, mu)))

    small_types = [ctx.type_of_point(p) for p in small_points[:-1]]
    large_types = [ctx.type_of_point(p) for p in large_points]
    target_type = ctx.type_of_point(small_points[-1])

    taus = [
        _longest_rep(ctx, small_types[j], large_types[j])
        for j in range(1, len(large_points))
    ]

    gtype = GalleryType(
        mu,
        tuple(small_types),
        tuple(large_types),
        target_type,
        tuple(taus),
    )

    # the walked gallery must be the all-straight coset tuple
    slot0 = _slot0_rep(ctx, gtype, large_points[0])
    cosets = (slot0,) + gtype.taus
    gal = gallery_from_cosets(ctx, gtype, cosets)
    for walked, assembled in zip(large_points, gal.large_points):
        if ctx.facet_of_point(walked) != ctx.facet_of_point(assembled):
            raise RuntimeError("straight walk disagrees with coset assembly")
    if gal.target() != tuple(mu):
        raise RuntimeError("straight walk missed the target vertex")
    _check_first_facet(ctx, gtype, mu)
    return gal


def _longest_rep(ctx, big_type, small_type):
    """Minimal representative of the longest class of W_big / W_small."""
    reps = ctx.min_coset_reps(tuple(sorted(big_type)), tuple(sorted(small_type)))
    longest = max(reps, key=ctx.length)
    ties = [r for r in reps if ctx.length(r) == ctx.length(longest)]
    if len(ties) != 1:
        raise RuntimeError("longest slot class is not unique")
    return longest


def _slot0_rep(ctx, gtype, point):
    big = tuple(sorted(gtype.small_types[0]))
    small = tuple(sorted(gtype.large_types[0]))
    facet = ctx.facet_of_point(point)
    bary = ctx.facet_barycenter(facet)
    base = ctx.standard_face_point(gtype.large_types[0])
    for rep in ctx.min_coset_reps(big, small):
        if rep.apply(base) == bary:
            return rep
    raise RuntimeError("first facet not reachable from the vertex group")


def _check_first_facet(ctx, gtype, mu):
    """The first large facet lies in the closed fundamental alcove and is
    cut out exactly by the simple walls orthogonal to the target."""
    expected = set()
    for i, wall in enumerate(ctx.alcove_walls):
        if wall.level == 0 and la.dot(wall.root, tuple(map(Fraction, mu))) == 0:
            expected.add(i)
    if set(gtype.large_types[0]) != expected:
        raise RuntimeError("first facet type mismatch")


# ---------------------------------------------------------------------------
# folds, positivity, dimension, duality


def fold_data(ctx, gallery, j):
    """The positive affine roots produced by folding slot j.

    Empty exactly when the slot is unfolded.  The walls are the
    translated left inversion walls of the shortest element moving the
    straight continuation onto the actual one."""
    gtype = gallery.gtype
    if not 1 <= j <= gtype.num_large - 1:
        raise ValueError("slot index out of range")
    delta = gallery.cosets[j]
    tau = gtype.taus[j - 1]
    if delta == tau:
        return []
    letters = tuple(sorted(gtype.small_types[j]))
    small = ctx.parabolic_elements(tuple(sorted(gtype.large_types[j])))
    best = None
    for u in small:
        cand = delta * u * tau.inverse()
        if best is None or ctx.length(cand) < ctx.length(best):
            best = cand
    word = ctx.reduced_word_in(best, letters)
    prefix = ctx.identity
    for c in gallery.cosets[:j]:
        prefix = prefix * c
    walls = []
    carrier = prefix
    for idx, letter in enumerate(word):
        walls.append(ctx.wall_image(carrier, ctx.alcove_walls[letter]))
        carrier = carrier * ctx.simple_reflections[letter]
    return walls


def is_positively_folded(ctx, gallery):
    gtype = gallery.gtype
    for j in range(1, gtype.num_large):
        point = gallery.large_points[j]
        for wall in fold_data(ctx, gallery, j):
            if la.dot(wall.root, point) < wall.level:
                return False
    return True


def dimension(ctx, gallery):
    """Number of load-bearing (wall, large facet) pairs."""
    if not is_positively_folded(ctx, gallery):
        raise NotPositivelyFolded("dimension is defined for positively folded galleries")
    return _dimension_unchecked(ctx, gallery)


def _dimension_unchecked(ctx, gallery):
    count = 0
    for j, large in enumerate(gallery.large_points):
        small = gallery.small_points[j]
        for wall in ctx.walls_through(small):
            v = la.dot(wall.root, large) - wall.level
            if v > 0:
                count += 1
    return count


def weyl_image(ctx, gallery, w):
    """Apply a finite Weyl group element (as a matrix) facetwise."""
    act = ctx.rel.act_weyl
    small = tuple(act(w, p) for p in gallery.small_points)
    large = tuple(act(w, p) for p in gallery.large_points)
    return gallery_from_points(ctx, gallery.gtype, small, large)


def gallery_facet_key(ctx, gallery):
    """A type-and-barycenter fingerprint, usable across gallery types."""
    keys = []
    for p in gallery.small_points:
        f = ctx.facet_of_point(p)
        keys.append((tuple(sorted(f.ftype)), ctx.facet_barycenter(f)))
    for p in gallery.large_points:
        f = ctx.facet_of_point(p)
        keys.append((tuple(sorted(f.ftype)), ctx.facet_barycenter(f)))
    return tuple(keys)


def dual(ctx, gallery):
    """Reverse the facet order of the gallery shifted back to the origin.

    The result is a gallery of the reversed type, whose dominant target
    is the dominant representative of minus the original one."""
    nu = gallery.small_points[-1]
    small = [la.vec_sub(p, nu) for p in reversed(gallery.small_points)]
    large = [la.vec_sub(p, nu) for p in reversed(gallery.large_points)]
    small_types = [ctx.type_of_point(p) for p in small[:-1]]
    target_type = ctx.type_of_point(small[-1])
    large_types = [ctx.type_of_point(p) for p in large]
    taus = [
        _longest_rep(ctx, small_types[j], large_types[j])
        for j in range(1, len(large))
    ]
    mu_dual, _ = ctx.rel.dominant_rep(tuple(-Fraction(x) for x in gallery.gtype.mu))
    gtype = GalleryType(
        tuple(int(x) for x in mu_dual),
        tuple(small_types),
        tuple(large_types),
        target_type,
        tuple(taus),
    )
    return gallery_from_points(ctx, gtype, tuple(small), tuple(large))
