"""Set partitions via restricted growth strings."""

from functools import lru_cache


def restricted_growth_strings(n):
    """Yield every restricted growth string of length ``n``.

    ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])``; each string encodes one set
    partition of ``range(n)`` (element i goes to block ``a[i]``).  The yielded
    list is reused between steps; copy it if you keep it.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def set_partitions(items):
    """All partitions of ``items`` into nonempty blocks, blocks in first-seen order."""
    items = list(items)
    if not items:
        yield []
        return
    for rgs in restricted_growth_strings(len(items)):
        blocks = [[] for _ in range(max(rgs) + 1)]
        for x, k in zip(items, rgs):
            blocks[k].append(x)
        yield blocks


@lru_cache(maxsize=None)
def bell(n):
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
