"""Inner search loops over padded adjacency arrays.

Every function here is compiled with numba unless ``P3PACK_NUMBA=0``.
Graphs arrive as ``nbr`` (n x maxdeg, padded with -1, rows sorted) and
``deg``.  Vertex state lives in ``status``: 0 means free, anything else
means unavailable (covered, skipped or removed).

The two tree searches keep an explicit stack so that a caller can run
them in quota-limited slices and check a wall-clock budget in between.
"""

import numpy as np

from ._accel import njit

DONE = 0
LIMIT = 1
PAUSED = 2


@njit
def free_degree(nbr, deg, status, v):
    c = 0
    for k in range(deg[v]):
        if status[nbr[v, k]] == 0:
            c += 1
    return c


@njit
def candidate(nbr, deg, status, v, k, path):
    """Store the k-th free 3-path through ``v`` in ``path``; False once exhausted.

    Paths with ``v`` as centre come first, then those with ``v`` as an end.
    """
    idx = 0
    d = deg[v]
    for p in range(d):
        a = nbr[v, p]
        if status[a] != 0:
            continue
        for q in range(p + 1, d):
            b = nbr[v, q]
            if status[b] != 0:
                continue
            if idx == k:
                path[0] = a
                path[1] = v
                path[2] = b
                return True
            idx += 1
    for p in range(d):
        u = nbr[v, p]
        if status[u] != 0:
            continue
        for q in range(deg[u]):
            w = nbr[u, q]
            if w == v or status[w] != 0:
                continue
            if idx == k:
                path[0] = min(v, w)
                path[1] = u
                path[2] = max(v, w)
                return True
            idx += 1
    return False


@njit
def select_branch(nbr, deg, status):
    """Vertex to branch on: first free vertex of free degree 1, else lowest free.

    Returns -1 when nothing is free and -2 when a free vertex is isolated.
    """
    first = -1
    for v in range(status.shape[0]):
        if status[v] != 0:
            continue
        fd = free_degree(nbr, deg, status, v)
        if fd == 0:
            return -2
        if fd == 1:
            return v
        if first < 0:
            first = v
    return first


@njit
def components_divisible(nbr, deg, status, mark, queue):
    """True iff every component of the free subgraph has order divisible by 3."""
    n = status.shape[0]
    for v in range(n):
        mark[v] = 0
    for s in range(n):
        if status[s] != 0 or mark[s] != 0:
            continue
        mark[s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            x = queue[head]
            head += 1
            for k in range(deg[x]):
                y = nbr[x, k]
                if status[y] == 0 and mark[y] == 0:
                    mark[y] = 1
                    queue[tail] = y
                    tail += 1
        if tail % 3 != 0:
            return False
    return True


@njit
def component_bound(nbr, deg, status, mark, queue):
    """Sum of floor(order / 3) over components of the free subgraph."""
    n = status.shape[0]
    for v in range(n):
        mark[v] = 0
    total = 0
    for s in range(n):
        if status[s] != 0 or mark[s] != 0:
            continue
        mark[s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            x = queue[head]
            head += 1
            for k in range(deg[x]):
                y = nbr[x, k]
                if status[y] == 0 and mark[y] == 0:
                    mark[y] = 1
                    queue[tail] = y
                    tail += 1
        total += tail // 3
    return total


@njit
def required_ok(req, reqdeg, a, c, b):
    # every required edge at a, b, c must be an edge of the path a-c-b;
    # req is only indexed when some required edge is present (it may be 1x1)
    if reqdeg[a] == 0 and reqdeg[b] == 0 and reqdeg[c] == 0:
        return True
    if reqdeg[a] != req[a, c]:
        return False
    if reqdeg[b] != req[b, c]:
        return False
    if reqdeg[c] != req[c, a] + req[c, b]:
        return False
    return True


@njit
def factor_search(nbr, deg, req, reqdeg, status, st, stack_v, stack_c, stack_p,
                  mark, queue, out, store, limit, quota):
    """Depth-first enumeration of 3-path factors of the free subgraph.

    ``st`` holds [depth, found, entering, nodes] and is updated in place so
    that a PAUSED search resumes exactly where it stopped.  Solutions are
    written to ``out[found]`` when ``store`` is set.
    """
    depth = st[0]
    found = st[1]
    entering = st[2]
    nodes = 0
    path = np.empty(3, np.int64)
    while True:
        if entering == 1:
            v = select_branch(nbr, deg, status)
            if v == -1:
                if store:
                    for i in range(depth):
                        for j in range(3):
                            out[found, i, j] = stack_p[i, j]
                found += 1
                if found >= limit:
                    st[0] = depth
                    st[1] = found
                    st[2] = 0
                    st[3] += nodes
                    return LIMIT
            if v < 0:
                entering = 0
                if depth == 0:
                    st[0] = 0
                    st[1] = found
                    st[2] = 0
                    st[3] += nodes
                    return DONE
                depth -= 1
                for j in range(3):
                    status[stack_p[depth, j]] = 0
                continue
            stack_v[depth] = v
            stack_c[depth] = 0
            entering = 0
        if nodes >= quota:
            st[0] = depth
            st[1] = found
            st[2] = 0
            st[3] += nodes
            return PAUSED
        nodes += 1
        v = stack_v[depth]
        k = stack_c[depth]
        if not candidate(nbr, deg, status, v, k, path):
            if depth == 0:
                st[0] = 0
                st[1] = found
                st[2] = 0
                st[3] += nodes
                return DONE
            depth -= 1
            for j in range(3):
                status[stack_p[depth, j]] = 0
            continue
        stack_c[depth] = k + 1
        a = path[0]
        c = path[1]
        b = path[2]
        if not required_ok(req, reqdeg, a, c, b):
            continue
        status[a] = 1
        status[b] = 1
        status[c] = 1
        if components_divisible(nbr, deg, status, mark, queue):
            stack_p[depth, 0] = a
            stack_p[depth, 1] = c
            stack_p[depth, 2] = b
            depth += 1
            entering = 1
        else:
            status[a] = 0
            status[b] = 0
            status[c] = 0


@njit
def _undo_level(status, stack_v, stack_p, d):
    if stack_p[d, 0] < 0:
        status[stack_v[d]] = 0
        return 0
    for j in range(3):
        status[stack_p[d, j]] = 0
    return 1


@njit
def packing_search(nbr, deg, status, st, stack_v, stack_c, stack_p, mark, queue,
                   best_p, target, quota):
    """Branch and bound for a maximum 3-path packing of the free subgraph.

    Branches on the lowest free vertex: cover it by one of its free paths,
    or (last option) leave it uncovered.  ``st`` holds
    [depth, npaths, entering, nodes, best]; ``best_p[:best]`` is the
    incumbent, pre-seeded by the caller.  Stops early once ``best`` reaches
    ``target``.
    """
    depth = st[0]
    npaths = st[1]
    entering = st[2]
    best = st[4]
    nodes = 0
    path = np.empty(3, np.int64)
    while True:
        if best >= target:
            st[0] = depth
            st[1] = npaths
            st[2] = 0
            st[3] += nodes
            st[4] = best
            return DONE
        if entering == 1:
            entering = 0
            ub = npaths + component_bound(nbr, deg, status, mark, queue)
            v = -1
            if ub > best:
                for x in range(status.shape[0]):
                    if status[x] == 0:
                        v = x
                        break
                if v < 0:
                    best = npaths
                    k = 0
                    for i in range(depth):
                        if stack_p[i, 0] >= 0:
                            for j in range(3):
                                best_p[k, j] = stack_p[i, j]
                            k += 1
                    continue
            if v < 0:
                if depth == 0:
                    st[0] = 0
                    st[1] = npaths
                    st[3] += nodes
                    st[4] = best
                    return DONE
                depth -= 1
                npaths -= _undo_level(status, stack_v, stack_p, depth)
                continue
            stack_v[depth] = v
            stack_c[depth] = 0
        if nodes >= quota:
            st[0] = depth
            st[1] = npaths
            st[2] = 0
            st[3] += nodes
            st[4] = best
            return PAUSED
        nodes += 1
        v = stack_v[depth]
        k = stack_c[depth]
        stack_c[depth] = k + 1
        if candidate(nbr, deg, status, v, k, path):
            for j in range(3):
                stack_p[depth, j] = path[j]
                status[path[j]] = 1
            npaths += 1
            depth += 1
            entering = 1
            continue
        # one extra option after the paths: skip v
        if _skip_slot(nbr, deg, status, v, k):
            status[v] = 2
            stack_p[depth, 0] = -1
            depth += 1
            entering = 1
            continue
        if depth == 0:
            st[0] = 0
            st[1] = npaths
            st[2] = 0
            st[3] += nodes
            st[4] = best
            return DONE
        depth -= 1
        npaths -= _undo_level(status, stack_v, stack_p, depth)


@njit
def _skip_slot(nbr, deg, status, v, k):
    """True when ``k`` is exactly the number of free paths through ``v``."""
    path = np.empty(3, np.int64)
    if k == 0:
        return True
    return candidate(nbr, deg, status, v, k - 1, path)


# edge-subset scans -----------------------------------------------------------

@njit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit
def scan_components(n, eu, ev, removed, parent, vcount, ecount):
    """Union-find over the edges not marked ``removed``.

    Returns (number of components, number of components containing a cycle).
    """
    for v in range(n):
        parent[v] = v
        vcount[v] = 0
        ecount[v] = 0
    for i in range(eu.shape[0]):
        if removed[i]:
            continue
        a = _find(parent, eu[i])
        b = _find(parent, ev[i])
        if a != b:
            parent[a] = b
    for v in range(n):
        vcount[_find(parent, v)] += 1
    for i in range(eu.shape[0]):
        if not removed[i]:
            ecount[_find(parent, eu[i])] += 1
    ncomp = 0
    ncyc = 0
    for v in range(n):
        if parent[v] == v:
            ncomp += 1
            if ecount[v] >= vcount[v]:
                ncyc += 1
    return ncomp, ncyc


@njit
def _next_combination(idx, size, m):
    i = size - 1
    while i >= 0 and idx[i] == m - size + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, size):
        idx[j] = idx[j - 1] + 1
    return True


@njit
def disconnecting_subsets(n, eu, ev, size, out):
    """Write every ``size``-subset of edge indices whose removal disconnects."""
    m = eu.shape[0]
    if size > m or size <= 0:
        return 0
    removed = np.zeros(m, np.bool_)
    parent = np.empty(n, np.int64)
    vcount = np.empty(n, np.int64)
    ecount = np.empty(n, np.int64)
    idx = np.arange(size)
    count = 0
    while True:
        for j in range(size):
            removed[idx[j]] = True
        ncomp, _ = scan_components(n, eu, ev, removed, parent, vcount, ecount)
        if ncomp > 1:
            for j in range(size):
                out[count, j] = idx[j]
            count += 1
        for j in range(size):
            removed[idx[j]] = False
        if not _next_combination(idx, size, m):
            return count


@njit
def cyclic_cut_search(n, eu, ev, max_size, witness):
    """Smallest edge set (size <= max_size) leaving two components with cycles.

    Returns its size with the edge indices in ``witness``, or -1 if none.
    """
    m = eu.shape[0]
    removed = np.zeros(m, np.bool_)
    parent = np.empty(n, np.int64)
    vcount = np.empty(n, np.int64)
    ecount = np.empty(n, np.int64)
    for size in range(1, min(max_size, m) + 1):
        idx = np.arange(size)
        while True:
            for j in range(size):
                removed[idx[j]] = True
            _, ncyc = scan_components(n, eu, ev, removed, parent, vcount, ecount)
            for j in range(size):
                removed[idx[j]] = False
            if ncyc >= 2:
                for j in range(size):
                    witness[j] = idx[j]
                return size
            if not _next_combination(idx, size, m):
                break
    return -1
