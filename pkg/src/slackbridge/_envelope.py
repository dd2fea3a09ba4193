import attr
import numba
import numpy as np
from scipy.integrate import cumulative_trapezoid

from ._checks.grid import check_same_grid
from ._checks.params import check_positive
from ._grid import GridFunction, cells_to_nodes


@attr.s(frozen=True)
class ToleranceConfig:
    """Relative tolerances of the envelope and variation operators.

    Every tolerance multiplies the scale ``max(1, ||f||_inf)`` of the
    function it is applied to.
    """

    contact = attr.ib(default=1e-9, converter=float, validator=check_positive)
    slope = attr.ib(default=1e-12, converter=float, validator=check_positive)
    quadrature = attr.ib(default=1e-8, converter=float, validator=check_positive)


DEFAULT_TOLERANCES = ToleranceConfig()


@attr.s(frozen=True, eq=False)
class EnvelopeResult:
    """Convexification of a sampled profile together with its structure.

    ``vertices`` are the node indices of the lower hull, ``chords`` the
    hull edges spanning two cells or more and ``affine_intervals`` the
    maximal runs of non-contact nodes inside a chord, given by the
    contact nodes which delimit them.
    """

    env = attr.ib()
    slopes = attr.ib()
    contact_mask = attr.ib()
    affine_intervals = attr.ib(converter=tuple)
    vertices = attr.ib()
    chords = attr.ib(converter=tuple)

    @property
    def slack_length(self):

        cells = sum(q - p for p, q in self.affine_intervals)
        return cells * self.env.dx

    def chord_at(self, index):

        for p, q in self.chords:
            if p <= index <= q:
                return p, q
        return None


def lower_hull(values, positions=None):
    """Monotone chain over the points ``(positions[i], values[i])``.

    ``positions`` defaults to the node indices and must be increasing.
    Collinear middle points are dropped, so every returned edge is a
    maximal straight piece of the hull. Returns indices into ``values``.
    """

    points = np.ascontiguousarray(values, dtype=np.float64)
    if positions is None:
        xs = np.arange(points.size, dtype=np.float64)
    else:
        xs = np.ascontiguousarray(positions, dtype=np.float64)
    return _monotone_chain(xs, points).astype(int)


@numba.njit(cache=True)
def _monotone_chain(xs, points):

    hull = np.empty(points.size, dtype=np.int64)
    top = 0
    for i in range(points.size):
        while top >= 2:
            o, a = hull[top - 2], hull[top - 1]
            cross = (xs[a] - xs[o]) * (points[i] - points[o]) - (xs[i] - xs[o]) * (
                points[a] - points[o]
            )
            if cross > 0:
                break
            top -= 1
        hull[top] = i
        top += 1
    return hull[:top].copy()


def _contact_mask(values, env_values, tol):

    scale = max(1.0, float(np.max(np.abs(values))))
    mask = np.abs(values - env_values) <= tol.contact * scale
    mask[0] = mask[-1] = True
    return mask


def _affine_intervals(chords, contact_mask):

    intervals = []
    for p, q in chords:
        start = None
        for i in range(p + 1, q):
            if contact_mask[i]:
                if start is not None:
                    intervals.append((start - 1, i))
                    start = None
            elif start is None:
                start = i
        if start is not None:
            intervals.append((start - 1, q))
    return intervals


def convex_envelope(f, tol=DEFAULT_TOLERANCES):
    """Greatest convex minorant of the samples of ``f``."""

    vertices = lower_hull(f.values)
    widths = np.diff(vertices)
    edge_slopes = np.diff(f.values[vertices]) / (widths * f.dx)
    slopes = np.repeat(edge_slopes, widths)
    nodes = np.arange(f.n + 1)
    env_values = np.interp(nodes, vertices, f.values[vertices])
    env_values[vertices] = f.values[vertices]
    contact_mask = _contact_mask(f.values, env_values, tol)
    chords = [
        (int(p), int(q)) for p, q in zip(vertices[:-1], vertices[1:]) if q - p >= 2
    ]
    slopes.setflags(write=False)
    contact_mask.setflags(write=False)
    return EnvelopeResult(
        env=f.with_values(env_values),
        slopes=slopes,
        contact_mask=contact_mask,
        affine_intervals=_affine_intervals(chords, contact_mask),
        vertices=vertices,
        chords=chords,
    )


def rigid_envelope(f, tol=DEFAULT_TOLERANCES):
    """Identity in place of the convexification.

    Used by the rigid hanger model: the profile is never bridged, so the
    contact set is the whole grid and there is no affine interval.
    """

    slopes = np.diff(f.values) / f.dx
    contact_mask = np.ones(f.n + 1, dtype=bool)
    slopes.setflags(write=False)
    contact_mask.setflags(write=False)
    return EnvelopeResult(
        env=f,
        slopes=slopes,
        contact_mask=contact_mask,
        affine_intervals=(),
        vertices=np.arange(f.n + 1),
        chords=(),
    )


def brute_force_envelope(f):
    """Pointwise minimum over every chord passing above a node.

    Quadratic memory per node; meant for grids of a few hundred cells.
    """

    values = f.values
    n = f.n
    env = np.empty(n + 1)
    for i in range(n + 1):
        left = np.arange(0, i + 1)[:, None]
        right = np.arange(i, n + 1)[None, :]
        span = np.maximum(right - left, 1)
        weight = (i - left) / span
        chord = values[left] + weight * (values[right] - values[left])
        env[i] = chord.min()
    return f.with_values(env)


def operator_T(f, tol=DEFAULT_TOLERANCES):
    """Slope of the convex envelope of the primitive of ``f``.

    The primitive is built with the trapezoid rule from ``F(a) = 0`` and
    the per-cell slopes are assigned to nodes with :func:`cells_to_nodes`.
    """

    primitive = f.with_values(cumulative_trapezoid(f.values, dx=f.dx, initial=0.0))
    result = convex_envelope(primitive, tol)
    return f.with_values(cells_to_nodes(result.slopes))


def check_noflat(f, env, tol=DEFAULT_TOLERANCES):
    """Whether ``f`` stays strictly above every affine piece of its envelope."""

    check_same_grid(f, env.env)
    contact = _contact_mask(f.values, env.env.values, tol)
    return not any(contact[p + 1 : q].any() for p, q in env.chords)
