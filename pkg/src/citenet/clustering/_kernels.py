"""Compiled loops for modularity optimization.

Randomness comes from an explicit splitmix64 state so runs depend only on
the seed. All loops are sequential.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def next_u64(state):
    state[0] += _GOLDEN
    z = state[0]
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def uniform(state):
    return np.float64(next_u64(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def below(state, bound):
    return np.int64(next_u64(state) % np.uint64(bound))


@njit(cache=True)
def shuffle(arr, lo, hi, state):
    """Fisher-Yates on arr[lo:hi]."""
    for i in range(hi - 1, lo, -1):
        j = lo + below(state, i - lo + 1)
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp


@njit(cache=True)
def community_totals(strength, comm, k):
    tot = np.zeros(k)
    for u in range(strength.shape[0]):
        tot[comm[u]] += strength[u]
    return tot


@njit(cache=True)
def quality(indptr, indices, weights, self_w, strength, comm, k, gamma, total_w):
    e = np.zeros(k)
    d = np.zeros(k)
    for u in range(strength.shape[0]):
        c = comm[u]
        d[c] += strength[u]
        e[c] += self_w[u]
        for j in range(indptr[u], indptr[u + 1]):
            if comm[indices[j]] == c:
                e[c] += 0.5 * weights[j]
    two_m = 2.0 * total_w
    q = 0.0
    for c in range(k):
        q += e[c] / total_w - gamma * (d[c] / two_m) ** 2
    return q


@njit(cache=True)
def local_move(indptr, indices, weights, strength, comm, comm_tot, gamma, total_w, state, max_rounds, tol):
    """Greedy single-node moves until a whole sweep moves nothing.

    ``comm`` and ``comm_tot`` are updated in place; ids must lie below
    ``len(comm_tot)``. A node goes to the neighboring community with the
    largest gain (lowest id on ties) only when that beats staying put. An
    empty community (the node alone) is a candidate too, taken only when it
    is strictly best. Gains closer than ``tol`` (in units of Q) count as
    ties, so a move always raises Q by more than ``tol``.

    Each round is a full sweep in a fresh shuffled order; neighbors of a
    node that moves are queued and revisited within the same round. The
    loop stops after a round with no moves, i.e. a full sweep that found
    nothing to improve. Returns (moves, rounds, converged).
    """
    n = strength.shape[0]
    two_m = 2.0 * total_w
    order = np.arange(n)
    queue = np.empty(n, np.int64)
    queued = np.zeros(n, np.bool_)
    neigh_w = np.zeros(comm_tot.shape[0])
    stamp = np.full(comm_tot.shape[0], -1, np.int64)
    cand = np.empty(comm_tot.shape[0], np.int64)
    eps = tol * total_w
    size_of = np.zeros(comm_tot.shape[0], np.int64)
    for u in range(n):
        size_of[comm[u]] += 1
    empty = np.empty(comm_tot.shape[0], np.int64)
    n_empty = 0
    for c in range(comm_tot.shape[0] - 1, -1, -1):
        if size_of[c] == 0:
            empty[n_empty] = c
            n_empty += 1
    visit = 0
    total_moves = 0
    rounds = 0
    converged = False
    while rounds < max_rounds:
        shuffle(order, 0, n, state)
        for i in range(n):
            queue[i] = order[i]
            queued[order[i]] = True
        head = 0
        size = n
        rounds += 1
        moves = 0
        while size > 0:
            u = queue[head]
            head += 1
            if head == n:
                head = 0
            size -= 1
            queued[u] = False
            cu = comm[u]
            ku = strength[u]
            nc = 0
            for j in range(indptr[u], indptr[u + 1]):
                c = comm[indices[j]]
                if stamp[c] != visit:
                    stamp[c] = visit
                    neigh_w[c] = 0.0
                    cand[nc] = c
                    nc += 1
                neigh_w[c] += weights[j]
            if nc == 0:
                visit += 1
                continue
            comm_tot[cu] -= ku
            w_cur = neigh_w[cu] if stamp[cu] == visit else 0.0
            gain_cur = w_cur - gamma * ku * comm_tot[cu] / two_m
            best = -1
            best_gain = -np.inf
            for i in range(nc):
                c = cand[i]
                if c == cu:
                    continue
                gn = neigh_w[c] - gamma * ku * comm_tot[c] / two_m
                if gn > best_gain + eps:
                    best = c
                    best_gain = gn
                elif gn >= best_gain - eps and c < best:
                    best = c
                    best_gain = gn
            target = cu
            if best >= 0 and best_gain > gain_cur + eps:
                target = best
            if size_of[cu] > 1 and n_empty > 0 and 0.0 > gain_cur + eps and (best < 0 or 0.0 > best_gain + eps):
                n_empty -= 1
                target = empty[n_empty]
            if target != cu:
                moves += 1
                size_of[cu] -= 1
                size_of[target] += 1
                if size_of[cu] == 0:
                    empty[n_empty] = cu
                    n_empty += 1
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if not queued[v] and comm[v] != target:
                        tail = head + size
                        if tail >= n:
                            tail -= n
                        queue[tail] = v
                        queued[v] = True
                        size += 1
            comm_tot[target] += ku
            comm[u] = target
            visit += 1
        total_moves += moves
        if moves == 0:
            converged = True
            break
    return total_moves, rounds, converged


@njit(cache=True)
def refine(indptr, indices, weights, strength, comm, k, gamma, total_w, theta, state):
    """Split each community into well-connected, internally connected pieces.

    Every node starts alone. Visiting a community's nodes in random order,
    a still-alone, well-connected node may join a well-connected neighboring
    piece of the same community with non-negative gain, chosen with
    probability proportional to exp(gain / theta); staying alone is always
    a candidate with gain 0. Returns the piece id per node (not renumbered).
    """
    n = strength.shape[0]
    two_m = 2.0 * total_w

    start = np.zeros(k + 1, np.int64)
    for u in range(n):
        start[comm[u] + 1] += 1
    for c in range(k):
        start[c + 1] += start[c]
    fill = start[:k].copy()
    members = np.empty(n, np.int64)
    for u in range(n):
        members[fill[comm[u]]] = u
        fill[comm[u]] += 1

    comm_tot = community_totals(strength, comm, k)
    ref = np.arange(n)
    ref_tot = strength.copy()
    ref_size = np.ones(n, np.int64)
    ext = np.zeros(n)
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            if comm[indices[j]] == comm[u]:
                ext[u] += weights[j]

    neigh_w = np.zeros(n)
    stamp = np.full(n, -1, np.int64)
    cand = np.empty(n, np.int64)
    gains = np.empty(n)
    probs = np.empty(n)
    visit = 0
    for c in range(k):
        lo = start[c]
        hi = start[c + 1]
        shuffle(members, lo, hi, state)
        kc = comm_tot[c]
        for t in range(lo, hi):
            v = members[t]
            visit += 1
            if ref[v] != v or ref_size[v] != 1:
                continue
            kv = strength[v]
            if ext[v] < gamma * kv * (kc - kv) / two_m:
                continue
            nr = 0
            for j in range(indptr[v], indptr[v + 1]):
                u = indices[j]
                if comm[u] != c:
                    continue
                r = ref[u]
                if stamp[r] != visit:
                    stamp[r] = visit
                    neigh_w[r] = 0.0
                    cand[nr] = r
                    nr += 1
                neigh_w[r] += weights[j]
            nk = 0
            gmax = 0.0
            for i in range(nr):
                r = cand[i]
                if r == v:
                    continue
                if ext[r] < gamma * ref_tot[r] * (kc - ref_tot[r]) / two_m:
                    continue
                gn = neigh_w[r] - gamma * kv * ref_tot[r] / two_m
                if gn < 0.0:
                    continue
                cand[nk] = r
                gains[nk] = gn
                if gn > gmax:
                    gmax = gn
                nk += 1
            if nk == 0:
                continue
            total = np.exp(-gmax / theta)
            for i in range(nk):
                probs[i] = np.exp((gains[i] - gmax) / theta)
                total += probs[i]
            x = uniform(state) * total
            chosen = -1
            acc = np.exp(-gmax / theta)
            if x >= acc:
                for i in range(nk):
                    acc += probs[i]
                    chosen = i
                    if x < acc:
                        break
            if chosen < 0:
                continue
            r = cand[chosen]
            wvr = neigh_w[r]
            ref[v] = r
            ref_tot[r] += kv
            ref_size[r] += 1
            ref_size[v] = 0
            ext[r] = ext[r] + ext[v] - 2.0 * wvr
    return ref


@njit(cache=True)
def aggregate(indptr, indices, weights, self_w, comm, k):
    """Collapse each community to one node; returns CSR plus self weights."""
    n = indptr.shape[0] - 1
    start = np.zeros(k + 1, np.int64)
    for u in range(n):
        start[comm[u] + 1] += 1
    for c in range(k):
        start[c + 1] += start[c]
    fill = start[:k].copy()
    members = np.empty(n, np.int64)
    for u in range(n):
        members[fill[comm[u]]] = u
        fill[comm[u]] += 1

    new_indptr = np.zeros(k + 1, np.int64)
    new_indices = np.empty(indices.shape[0], np.int64)
    new_weights = np.empty(indices.shape[0], np.float64)
    new_self = np.zeros(k)
    neigh_w = np.zeros(k)
    stamp = np.full(k, -1, np.int64)
    cand = np.empty(k, np.int64)
    pos = 0
    for c in range(k):
        nc = 0
        for t in range(start[c], start[c + 1]):
            u = members[t]
            new_self[c] += self_w[u]
            for j in range(indptr[u], indptr[u + 1]):
                cv = comm[indices[j]]
                if cv == c:
                    new_self[c] += 0.5 * weights[j]
                    continue
                if stamp[cv] != c:
                    stamp[cv] = c
                    neigh_w[cv] = 0.0
                    cand[nc] = cv
                    nc += 1
                neigh_w[cv] += weights[j]
        row = np.sort(cand[:nc])
        for i in range(nc):
            new_indices[pos] = row[i]
            new_weights[pos] = neigh_w[row[i]]
            pos += 1
        new_indptr[c + 1] = pos
    return new_indptr, new_indices[:pos].copy(), new_weights[:pos].copy(), new_self
