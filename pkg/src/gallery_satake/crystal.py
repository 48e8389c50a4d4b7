"""Root operators on combinatorial galleries and the LS gallery generator.

Each operator scans the levels of one simple root along the small facets
of a gallery, then applies identity / reflection / translation facetwise
on three index ranges.  Absence is a value, not an error: the outcome
records which case applied and at which indices.
"""

from dataclasses import dataclass

from . import _linalg as la
from .coxeter import Wall
from .gallery import Gallery, gallery_from_points


@dataclass(frozen=True)
class OperatorOutcome:
    result: object  # Gallery or None
    case_used: str
    j: int
    l: int
    m: object

    @property
    def defined(self):
        return self.result is not None


def _small_values(alpha, gallery):
    return [alpha.pair(p) for p in gallery.small_points]


def _min_level(alpha, values):
    on_levels = [v for v in values if (v / alpha.jump).denominator == 1]
    return min(on_levels)


def _apply_ranges(ctx, gallery, maps_for_large, maps_for_small):
    new_large = [maps_for_large(i).apply(p) for i, p in enumerate(gallery.large_points)]
    new_small = [maps_for_small(i).apply(p) for i, p in enumerate(gallery.small_points)]
    return gallery_from_points(ctx, gallery.gtype, tuple(new_small), tuple(new_large))


def apply_e(ctx, gallery, alpha):
    """Raising operator: shifts the target by the coroot of alpha."""
    values = _small_values(alpha, gallery)
    m = _min_level(alpha, values)
    if m >= 0:
        return OperatorOutcome(None, "I", -1, -1, m)
    u = alpha.jump
    l = next(i for i, v in enumerate(values) if v == m)
    j = max(i for i, v in enumerate(values[: l + 1]) if v == m + u)
    refl = ctx.reflection(Wall(alpha.functional, m + u))
    shift = ctx.translation(la.vec_scale(u, alpha.coroot))
    ident = ctx.identity

    def for_large(i):
        if i < j:
            return ident
        if i < l:
            return refl
        return shift

    def for_small(i):
        if i <= j:
            return ident
        if i <= l:
            return refl
        return shift

    result = _apply_ranges(ctx, gallery, for_large, for_small)
    return OperatorOutcome(result, "I", j, l, m)


def apply_f(ctx, gallery, alpha):
    """Lowering operator: shifts the target by minus the coroot."""
    values = _small_values(alpha, gallery)
    m = _min_level(alpha, values)
    target_value = values[-1]
    if not m < target_value:
        return OperatorOutcome(None, "II", -1, -1, m)
    u = alpha.jump
    j = max(i for i, v in enumerate(values) if v == m)
    l = next(i for i in range(j, len(values)) if values[i] == m + u)
    refl = ctx.reflection(Wall(alpha.functional, m))
    shift = ctx.translation(la.vec_scale(-u, alpha.coroot))
    ident = ctx.identity

    def for_large(i):
        if i < j:
            return ident
        if i < l:
            return refl
        return shift

    def for_small(i):
        if i <= j:
            return ident
        if i <= l:
            return refl
        return shift

    result = _apply_ranges(ctx, gallery, for_large, for_small)
    return OperatorOutcome(result, "II", j, l, m)


def apply_e_tilde(ctx, gallery, alpha):
    """Fold-removing operator: reflects one excursion below the lowest
    wall back up, keeping the target fixed."""
    values = _small_values(alpha, gallery)
    m = _min_level(alpha, values)
    j = next(i for i, v in enumerate(values) if v == m)
    if any(values[i] <= m for i in range(j)):
        return OperatorOutcome(None, "III", -1, -1, m)
    l = next((i for i in range(j + 1, len(values)) if values[i] == m), None)
    if l is None:
        return OperatorOutcome(None, "III", -1, -1, m)
    dips = [
        i
        for i in range(j, l)
        if la.dot(alpha.functional, gallery.large_points[i]) < m
    ]
    if not dips:
        return OperatorOutcome(None, "III", -1, -1, m)
    refl = ctx.reflection(Wall(alpha.functional, m))
    ident = ctx.identity

    def for_large(i):
        if j <= i < l:
            return refl
        return ident

    def for_small(i):
        if j < i < l:
            return refl
        return ident

    result = _apply_ranges(ctx, gallery, for_large, for_small)
    return OperatorOutcome(result, "III", j, l, m)


def ls_galleries(ctx, gamma_mu):
    """Closure of the fixed minimal gallery under all lowering operators."""
    simple = ctx.rel.simple
    seen = {gamma_mu.key: gamma_mu}
    frontier = [gamma_mu]
    while frontier:
        nxt = []
        for g in frontier:
            for alpha in simple:
                out = apply_f(ctx, g, alpha)
                if out.defined and out.result.key not in seen:
                    seen[out.result.key] = out.result
                    nxt.append(out.result)
        frontier = nxt
    return list(seen.values())
