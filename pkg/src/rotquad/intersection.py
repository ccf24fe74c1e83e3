"""Algebraic intersection numbers of paths and loops in the punctured sphere.

Two independent realizations of the same pairing: a literal signed count of
transverse segment crossings, and the winding number of a closed loop around
the origin in the chart that sends the puncture pair to (0, infinity).  The
two must always agree; the test suite enforces it on random corpora.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PointOnLoop, SamplingFailure
from .geometry import (
    DEFAULT_TOL,
    MobiusTransform,
    Polyline,
    SpherePoint,
    Tolerances,
    apply_mobius,
    as_sphere_point,
    dedupe_consecutive,
    mobius_normalize,
    point_segment_distance,
    refine_path_view,
    segment_crossing,
    winding_number,
)


@dataclass(frozen=True)
class MarkedPathPair:
    """A path alpha from x1 to x2 and a path beta from x3 to x4.

    alpha must stay clear of {x3, x4} and beta clear of {x1, x2}; the
    endpoints must match the marked points exactly.  All four points are
    finite here since polylines live in one affine chart.
    """

    alpha: Polyline
    beta: Polyline
    x1: SpherePoint
    x2: SpherePoint
    x3: SpherePoint
    x4: SpherePoint

    def __post_init__(self):
        for name in ("x1", "x2", "x3", "x4"):
            object.__setattr__(self, name, as_sphere_point(getattr(self, name)))
        if self.alpha.closed or self.beta.closed:
            raise ValueError("alpha and beta must be open paths")
        if self.alpha.start != self.x1.value or self.alpha.end != self.x2.value:
            raise ValueError("alpha endpoints must equal x1, x2 exactly")
        if self.beta.start != self.x3.value or self.beta.end != self.x4.value:
            raise ValueError("beta endpoints must equal x3, x4 exactly")
        eps = DEFAULT_TOL.eps_edge
        for p in (self.x3.value, self.x4.value):
            for a, b in self.alpha.edges():
                if point_segment_distance(p, a, b) <= eps:
                    raise PointOnLoop(f"alpha passes through the marked point {p!r}")
        for p in (self.x1.value, self.x2.value):
            for a, b in self.beta.edges():
                if point_segment_distance(p, a, b) <= eps:
                    raise PointOnLoop(f"beta passes through the marked point {p!r}")


def signed_crossing_sum(first: Polyline, second: Polyline, tol: Tolerances = DEFAULT_TOL) -> int:
    """Sum of transverse crossing signs over all edge pairs.

    Degenerate contacts raise; callers jitter and retry.
    """
    total = 0
    for e1 in first.edges():
        for e2 in second.edges():
            sign = segment_crossing(e1, e2, tol)
            if sign is not None:
                total += sign
    return total


def algebraic_intersection(pair: MarkedPathPair, tol: Tolerances = DEFAULT_TOL) -> int:
    """The pairing of alpha against beta: signed transverse crossing count."""
    return signed_crossing_sum(pair.alpha, pair.beta, tol)


def normalized_view(x1: SpherePoint, x2: SpherePoint):
    """The chart map z -> h(z) with h(x1) = 0, h(x2) = inf, as a plain callable."""
    h = mobius_normalize(x1, x2)
    return chart_view(h)


def chart_view(h: MobiusTransform):
    def view(z: complex) -> complex:
        image = apply_mobius(h, as_sphere_point(z))
        if image.is_infinity:
            raise PointOnLoop("path passes through the chart pole")
        return image.value
    return view


def loop_class(
    gamma: Polyline,
    x1: SpherePoint,
    x2: SpherePoint,
    tol: Tolerances = DEFAULT_TOL,
) -> int:
    """Homotopy class of a closed loop in the sphere punctured at x1 and x2.

    Measured as the winding number around 0 after the normalizing chart;
    equals the pairing of gamma against any transverse path from x1 to x2.
    A loop whose image degenerates to a point has class 0.
    """
    if not gamma.closed:
        raise ValueError("loop_class needs a closed polyline")
    x1 = as_sphere_point(x1)
    x2 = as_sphere_point(x2)
    view = normalized_view(x1, x2)
    image = refine_path_view(gamma.vertices, view, closed=True, tol=tol)
    image = dedupe_consecutive(image, closed=True)
    if len(image) < 3:
        return 0
    return winding_number(Polyline(tuple(image), closed=True), 0j, tol)


def resample_under(
    vertices,
    f,
    protected: tuple[complex, ...],
    closed: bool = False,
    tol: Tolerances = DEFAULT_TOL,
) -> list[complex]:
    """Image of a polyline under f, subdivided until chords are trustworthy.

    Consecutive image points must be closer to each other than half their
    distance to every protected point, so each image chord is homotopic to
    the true image arc in the complement of the protected set.
    """
    verts = [complex(v) for v in vertices]

    def ok(w0: complex, w1: complex) -> bool:
        step = abs(w1 - w0)
        if step == 0.0:
            return True
        for p in protected:
            if step > 0.5 * min(abs(w0 - p), abs(w1 - p)):
                return False
        return True

    budget = tol.max_refine_points
    out = [complex(f(verts[0]))]
    edge_list = list(zip(verts, verts[1:]))
    if closed:
        edge_list.append((verts[-1], verts[0]))
    for edge_index, (a, b) in enumerate(edge_list):
        wa = out[-1]
        wb = out[0] if (closed and edge_index == len(edge_list) - 1) else complex(f(b))
        stack = [(a, b, wa, wb, 0)]
        while stack:
            sa, sb, swa, swb, depth = stack.pop()
            if ok(swa, swb):
                budget -= 1
                if budget < 0:
                    raise SamplingFailure("resampling budget exhausted")
                out.append(swb)
                continue
            if depth > 60:
                raise PointOnLoop("image path cannot be separated from a marked point")
            mid = 0.5 * (sa + sb)
            wm = complex(f(mid))
            stack.append((mid, sb, wm, swb, depth + 1))
            stack.append((sa, mid, swa, wm, depth + 1))
    if closed:
        out.pop()
    return out


def homeo_invariance_check(pair: MarkedPathPair, f, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether the pairing is unchanged by pushing everything through f.

    f is a callable on finite chart points (an orientation-preserving
    homeomorphism in the chart); marked points are carried along and the
    image paths are adaptively resampled before recounting crossings.
    """
    y = [complex(f(p.value)) for p in (pair.x1, pair.x2, pair.x3, pair.x4)]
    alpha_img = resample_under(pair.alpha.vertices, f, (y[2], y[3]), tol=tol)
    beta_img = resample_under(pair.beta.vertices, f, (y[0], y[1]), tol=tol)
    alpha_img = dedupe_consecutive(alpha_img)
    beta_img = dedupe_consecutive(beta_img)
    # Mapped endpoints can drift by roundoff; pin them to the mapped marks.
    alpha_img[0], alpha_img[-1] = y[0], y[1]
    beta_img[0], beta_img[-1] = y[2], y[3]
    image_pair = MarkedPathPair(
        Polyline(tuple(alpha_img)),
        Polyline(tuple(beta_img)),
        SpherePoint(y[0]),
        SpherePoint(y[1]),
        SpherePoint(y[2]),
        SpherePoint(y[3]),
    )
    return algebraic_intersection(image_pair, tol) == algebraic_intersection(pair, tol)
