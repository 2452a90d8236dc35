"""Pure-Python version of the (k, j, h) decomposition scan.

For fixed ``(k, j, h)`` with ``e = h - 2j`` the exact solution of the reduced
system is

    y = b (4tk - e) / (2a)          x = (k - y) / 2
    z = (4 t^2 b^2 k - (2a^2 + 1) e) / a^2
    w = (-tk + j - z) / 10

and a hit is any triple for which all four are integers.
"""


def scan_window(t, a, b, k_lo, k_hi):
    hits = []
    tb2 = t * b * b
    a2 = a * a
    two_a = 2 * a
    for k in range(k_lo, k_hi + 1):
        zk = 4 * t * tb2 * k
        yk = 4 * t * k
        for j in range(3):
            m = -t * k + j
            for h in range(1, 12):
                e = h - 2 * j
                ynum = b * (yk - e)
                if ynum % two_a:
                    continue
                y = ynum // two_a
                if (k - y) % 2:
                    continue
                znum = zk - (2 * a2 + 1) * e
                if znum % a2:
                    continue
                z = znum // a2
                if (m - z) % 10:
                    continue
                hits.append((k, j, h, (k - y) // 2, y, z, (m - z) // 10))
    return hits
