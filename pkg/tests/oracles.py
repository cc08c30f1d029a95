"""Independent reference evaluations used by the tests.

Nothing here imports the bound or identity code under test: the formulas are
transcribed term by term in plain Python, and integrals come from closed
forms.
"""

import math


def absD(mixed, u, v, q=1.0):
    return abs(float(mixed(u, v))) ** q


def t1_bound(mixed, a, b, c, d, x, y):
    Sx = (x - a) ** 2 + (b - x) ** 2
    Sy = (y - c) ** 2 + (d - y) ** 2
    D = lambda u, v: absD(mixed, u, v)
    terms = [
        Sx * Sy / 4 * D(x, y),
        (x - a) ** 2 * Sy / 2 * D(a, y),
        (b - x) ** 2 * Sy / 2 * D(b, y),
        (y - c) ** 2 * Sx / 2 * D(x, c),
        (d - y) ** 2 * Sx / 2 * D(x, d),
        (x - a) ** 2 * (y - c) ** 2 * D(a, c),
        (x - a) ** 2 * (d - y) ** 2 * D(a, d),
        (b - x) ** 2 * (y - c) ** 2 * D(b, c),
        (b - x) ** 2 * (d - y) ** 2 * D(b, d),
    ]
    return sum(terms) / (9 * (b - a) * (d - c))


def t2_bound(mixed, a, b, c, d, x, y, q):
    p = q / (q - 1)
    area = (b - a) * (d - c)
    D = lambda u, v: absD(mixed, u, v, q)
    K = (x - a) ** 2 * (y - c) ** 2 / area
    L = (x - a) ** 2 * (d - y) ** 2 / area
    M = (b - x) ** 2 * (y - c) ** 2 / area
    N = (b - x) ** 2 * (d - y) ** 2 / area
    s = (
        K * (D(x, y) + D(x, c) + D(a, y) + D(a, c)) ** (1 / q)
        + L * (D(x, y) + D(x, d) + D(a, y) + D(a, d)) ** (1 / q)
        + M * (D(x, y) + D(x, c) + D(b, y) + D(b, c)) ** (1 / q)
        + N * (D(x, y) + D(x, d) + D(b, y) + D(b, d)) ** (1 / q)
    )
    return s / (2 ** (2 / q) * (p + 1) ** (2 / p))


def t3_bound(mixed, a, b, c, d, x, y, q):
    area = (b - a) * (d - c)
    D = lambda u, v: absD(mixed, u, v, q)
    K = (x - a) ** 2 * (y - c) ** 2 / area
    L = (x - a) ** 2 * (d - y) ** 2 / area
    M = (b - x) ** 2 * (y - c) ** 2 / area
    N = (b - x) ** 2 * (d - y) ** 2 / area
    B = lambda corner, fx, fy: (
        D(x, y) / 36 + D(*fx) / 18 + D(*fy) / 18 + D(*corner) / 9
    ) ** (1 / q)
    s = (
        K * B((a, c), (x, c), (a, y))
        + L * B((a, d), (x, d), (a, y))
        + M * B((b, c), (x, c), (b, y))
        + N * B((b, d), (x, d), (b, y))
    )
    return 0.25 ** (1 - 1 / q) * s


def lemma_lhs_exact(f, exact, a, b, c, d, x, y):
    """A + mean f from the catalog's closed-form integrals."""
    area = (b - a) * (d - c)
    A = (
        (x - a) * (y - c) * f(a, c)
        + (x - a) * (d - y) * f(a, d)
        + (b - x) * (y - c) * f(b, c)
        + (b - x) * (d - y) * f(b, d)
        - (x - a) * exact.along_v(a, c, d)
        - (b - x) * exact.along_v(b, c, d)
        - (d - y) * exact.along_u(d, a, b)
        - (y - c) * exact.along_u(c, a, b)
    ) / area
    return float(A + exact.double(a, b, c, d) / area)


def product_lhs_unit(x, y):
    """Closed form of A + mean for f = uv on the unit square."""
    return (2 * x - 1) * (2 * y - 1) / 4


def product_kernel_sum_first_power(x, y):
    """Sum of kernel terms for f = uv on the unit square, BC/BD with first powers."""
    return (x * x * y * y - x * x * (1 - y) ** 2 - (1 - x) * y + (1 - x) * (1 - y)) / 4


def corollary_c1_1_display(f, exact, a, b, c, d):
    """Left side of the corner (a, c) corollary with the missing integral restored.

    The corner value is taken as f(b, d); the printed display divides it by
    the area, which only agrees on unit-area rectangles (see
    ``corollary_c1_1_display_literal``).
    """
    area = (b - a) * (d - c)
    return abs(
        f(b, d)
        - exact.along_v(b, c, d) / (d - c)
        - exact.along_u(d, a, b) / (b - a)
        + exact.double(a, b, c, d) / area
    )


def corollary_c1_1_display_literal(f, exact, a, b, c, d):
    area = (b - a) * (d - c)
    return abs(
        f(b, d) / area
        - exact.along_v(b, c, d) / (d - c)
        - exact.along_u(d, a, b) / (b - a)
        + exact.double(a, b, c, d) / area
    )


def corollary_c1_3_display(f, exact, a, b, c, d, literal=False):
    area = (b - a) * (d - c)
    corners = (f(a, c) + f(a, d) + f(b, c) + f(b, d)) / 4
    if literal:
        corners /= area
    return abs(
        corners
        - exact.along_v(a, c, d) / (2 * (d - c))
        - exact.along_v(b, c, d) / (2 * (d - c))
        - exact.along_u(d, a, b) / (2 * (b - a))
        - exact.along_u(c, a, b) / (2 * (b - a))
        + exact.double(a, b, c, d) / area
    )


def chain_exact(f, exact, a, b, c, d):
    w, h = b - a, d - c
    mx, my = (a + b) / 2, (c + d) / 2
    return (
        f(mx, my),
        0.5 * (exact.along_u(my, a, b) / w + exact.along_v(mx, c, d) / h),
        exact.double(a, b, c, d) / (w * h),
        0.25 * (
            exact.along_u(c, a, b) / w + exact.along_u(d, a, b) / w
            + exact.along_v(a, c, d) / h + exact.along_v(b, c, d) / h
        ),
        (f(a, c) + f(a, d) + f(b, c) + f(b, d)) / 4,
    )


def interior_grid(a, b, c, d, n=5):
    xs = [a + (i + 0.5) * (b - a) / n for i in range(n)]
    ys = [c + (j + 0.5) * (d - c) / n for j in range(n)]
    return [(x, y) for x in xs for y in ys]


def closed_form_monomial(i, j, a, b, c, d):
    return (b ** (i + 1) - a ** (i + 1)) / (i + 1) * (d ** (j + 1) - c ** (j + 1)) / (j + 1)


E = math.e
