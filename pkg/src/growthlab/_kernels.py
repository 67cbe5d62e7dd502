"""Compiled kernels behind :class:`growthlab.tree.GrowingTree` and the growth driver.

The tree state is a flat tuple of numpy arrays so it can be handed to numba
without a jitclass:

    meta      int64[4]   n, pool_used, last unique king (-1 if none), lead changes
    parent    int64[C]   parent id, -1 for the root
    degree    int64[C]
    adj_start int64[C]   offset of each node's neighbor block inside ``pool``
    adj_cap   int64[C]   capacity of that block
    pool      int64[P]   neighbor ids; blocks are bump-allocated and doubled on overflow
    order     int64[C]   node ids sorted by degree, descending
    pos       int64[C]   inverse permutation of ``order``
    lo        int64[C+2] bucket d occupies order[lo[d]:lo[d-1]], lo[0] == n
    occ_next  int64[C+2] circular linked list of occupied degree values,
    occ_prev  int64[C+2] sentinel 0; occ_next[0] is the min degree, occ_prev[0] the max
"""

import numpy as np
from numba import njit

QPA = 0
CR = 1

INITIAL_BLOCK = 2


def pool_size(capacity):
    # doubling blocks starting at INITIAL_BLOCK never use more than 12 slots per node
    return 12 * capacity + 16


@njit(cache=True)
def _adj_push(state, v, u):
    meta, parent, degree, adj_start, adj_cap, pool = state[0], state[1], state[2], state[3], state[4], state[5]
    d = degree[v]
    if d == adj_cap[v]:
        new_cap = 2 * adj_cap[v]
        start = meta[1]
        if start + new_cap > pool.shape[0]:
            raise RuntimeError("neighbor pool exhausted")
        old = adj_start[v]
        for k in range(d):
            pool[start + k] = pool[old + k]
        adj_start[v] = start
        adj_cap[v] = new_cap
        meta[1] = start + new_cap
    pool[adj_start[v] + d] = u


@njit(cache=True)
def _occ_insert_after(occ_next, occ_prev, after, d):
    nxt = occ_next[after]
    occ_next[after] = d
    occ_prev[d] = after
    occ_next[d] = nxt
    occ_prev[nxt] = d


@njit(cache=True)
def _occ_remove(occ_next, occ_prev, d):
    p = occ_prev[d]
    q = occ_next[d]
    occ_next[p] = q
    occ_prev[q] = p
    occ_next[d] = 0
    occ_prev[d] = 0


@njit(cache=True)
def bucket_count(lo, d):
    return lo[d - 1] - lo[d]


@njit(cache=True)
def init_seed(state):
    meta, parent, degree, adj_start, adj_cap, pool, order, pos, lo, occ_next, occ_prev = state
    meta[:] = 0
    meta[2] = -1
    lo[:] = 0
    occ_next[:] = 0
    occ_prev[:] = 0
    for v in range(2):
        parent[v] = v - 1
        degree[v] = 1
        adj_start[v] = meta[1]
        adj_cap[v] = INITIAL_BLOCK
        meta[1] += INITIAL_BLOCK
        order[v] = v
        pos[v] = v
    pool[adj_start[0]] = 1
    pool[adj_start[1]] = 0
    meta[0] = 2
    lo[0] = 2
    _occ_insert_after(occ_next, occ_prev, 0, 1)


@njit(cache=True)
def add_leaf(state, a):
    """Append node n attached to ``a``; returns the new id."""
    meta, parent, degree, adj_start, adj_cap, pool, order, pos, lo, occ_next, occ_prev = state
    n = meta[0]
    if a < 0 or a >= n:
        raise IndexError("attach_to is not an existing node")
    if n >= parent.shape[0]:
        raise RuntimeError("tree capacity exceeded")
    v = n
    parent[v] = a
    degree[v] = 0
    adj_start[v] = meta[1]
    adj_cap[v] = INITIAL_BLOCK
    if meta[1] + INITIAL_BLOCK > pool.shape[0]:
        raise RuntimeError("neighbor pool exhausted")
    meta[1] += INITIAL_BLOCK
    _adj_push(state, v, a)
    degree[v] = 1
    _adj_push(state, a, v)

    # new node joins bucket 1 at the tail of the descending order
    had_ones = bucket_count(lo, 1) > 0
    order[n] = v
    pos[v] = n
    meta[0] = n + 1
    lo[0] = n + 1
    if not had_ones:
        _occ_insert_after(occ_next, occ_prev, 0, 1)

    # move a from bucket d to d + 1: swap it to the head of bucket d, shrink bucket d
    d = degree[a]
    i = pos[a]
    j = lo[d]
    w = order[j]
    order[j] = a
    pos[a] = j
    order[i] = w
    pos[w] = i
    if bucket_count(lo, d + 1) == 0:
        _occ_insert_after(occ_next, occ_prev, d, d + 1)
    lo[d] += 1
    if bucket_count(lo, d) == 0:
        _occ_remove(occ_next, occ_prev, d)
    degree[a] = d + 1
    return v


@njit(cache=True)
def update_king(state):
    """Track the unique-argmax identity; count a lead change when it switches."""
    meta, order, lo, occ_prev = state[0], state[6], state[8], state[10]
    dmax = occ_prev[0]
    if bucket_count(lo, dmax) == 1:
        king = order[lo[dmax]]
        if meta[2] >= 0 and king != meta[2]:
            meta[3] += 1
        meta[2] = king


@njit(cache=True)
def sample_target(state, alpha, powtab, use_log, rng):
    """Draw a target ∝ d^alpha via its degree class, then a uniform member.

    rng draws: one uniform real for the class (finite alpha only), one integer
    for the member.
    """
    order, lo, occ_next, occ_prev = state[6], state[8], state[9], state[10]
    if alpha == np.inf:
        d = occ_prev[0]
    elif alpha == -np.inf:
        d = occ_next[0]
    elif use_log:
        shift = -np.inf
        d = occ_next[0]
        while d != 0:
            lw = np.log(bucket_count(lo, d)) + alpha * np.log(d)
            if lw > shift:
                shift = lw
            d = occ_next[d]
        total = 0.0
        d = occ_next[0]
        while d != 0:
            total += np.exp(np.log(bucket_count(lo, d)) + alpha * np.log(d) - shift)
            d = occ_next[d]
        u = rng.random() * total
        d = occ_next[0]
        acc = 0.0
        while True:
            acc += np.exp(np.log(bucket_count(lo, d)) + alpha * np.log(d) - shift)
            if u < acc or occ_next[d] == 0:
                break
            d = occ_next[d]
    else:
        total = 0.0
        d = occ_next[0]
        while d != 0:
            total += bucket_count(lo, d) * powtab[d]
            d = occ_next[d]
        u = rng.random() * total
        d = occ_next[0]
        acc = 0.0
        while True:
            acc += bucket_count(lo, d) * powtab[d]
            if u < acc or occ_next[d] == 0:
                break
            d = occ_next[d]
    k = rng.integers(0, bucket_count(lo, d))
    return order[lo[d] + k]


@njit(cache=True)
def redirect(state, target, family, r, rng):
    """Return (attached, redirected). rng draws: one coin, then one neighbor index if redirected."""
    degree, adj_start, pool = state[2], state[3], state[5]
    d = degree[target]
    if family == QPA:
        stay = 1.0 / (d + 1.0)
    else:
        stay = 1.0 - r
    u = rng.random()
    if u < stay:
        return target, False
    j = rng.integers(0, d)
    return pool[adj_start[target] + j], True


@njit(cache=True)
def choose(state, family, alpha, r, powtab, use_log, rng):
    t = sample_target(state, alpha, powtab, use_log, rng)
    a, red = redirect(state, t, family, r, rng)
    return t, a, red


@njit(cache=True)
def step(state, family, alpha, r, powtab, use_log, rng):
    t, a, red = choose(state, family, alpha, r, powtab, use_log, rng)
    v = add_leaf(state, a)
    update_king(state)
    return v, t, a, red


@njit(cache=True)
def grow(state, family, alpha, r, powtab, use_log, n_stop, rng):
    while state[0][0] < n_stop:
        t, a, red = choose(state, family, alpha, r, powtab, use_log, rng)
        add_leaf(state, a)
        update_king(state)


@njit(cache=True)
def attachment_counts(state, family, alpha, r, powtab, use_log, trials, rng):
    """Histogram of attachment choices on a frozen tree (no mutation)."""
    n = state[0][0]
    counts = np.zeros(n, dtype=np.int64)
    for _ in range(trials):
        t, a, red = choose(state, family, alpha, r, powtab, use_log, rng)
        counts[a] += 1
    return counts


@njit(cache=True)
def build_from_parents(state, parents):
    init_seed(state)
    for i in range(parents.shape[0]):
        add_leaf(state, parents[i])
        update_king(state)


@njit(cache=True)
def _bfs_far(state, src, dist):
    n = state[0][0]
    degree, adj_start, pool = state[2], state[3], state[5]
    for i in range(n):
        dist[i] = -1
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 1
    queue[0] = src
    dist[src] = 0
    far = src
    while head < tail:
        v = queue[head]
        head += 1
        if dist[v] > dist[far]:
            far = v
        s = adj_start[v]
        for k in range(degree[v]):
            u = pool[s + k]
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue[tail] = u
                tail += 1
    return far


@njit(cache=True)
def diameter(state):
    n = state[0][0]
    dist = np.empty(n, dtype=np.int64)
    a = _bfs_far(state, 0, dist)
    b = _bfs_far(state, a, dist)
    return dist[b]
