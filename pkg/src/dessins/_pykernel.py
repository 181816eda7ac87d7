"""Pure-Python permutation kernel.

Permutations are tuples of length n over 0..n-1; entry i is the image of
point i. The action is on the right: the product ``compose(p, q)`` means
"apply p first, then q". The compiled kernel in ``_ckernel.pyx`` implements
the same functions with identical iteration order, so results (including
dict insertion order in transversals and the order pairs are queued) are
byte-for-byte equal.

These functions are the hot inner loops of the stabilizer-chain machinery;
everything else in the package stays in plain Python.

Chain conventions shared by both kernels:

- a transversal is a dict {point: (rep, rep_inv)} whose reps are never
  replaced once written (the orbit only ever grows);
- ``levels`` / ``deeper`` views are lists of (base_point, transversal);
- a Schreier work queue is a list of (orbit_point, gen_index) pairs, each
  of which is sifted exactly once over the lifetime of the chain.
"""


def compose(p, q):
    """Product pq acting on the right: i -> q[p[i]]."""
    return tuple(q[i] for i in p)


def compose3(p, q, r):
    """Triple product pqr, saving one intermediate tuple."""
    return tuple(r[q[i]] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def power(p, n):
    """p**n by binary powering; n may be negative."""
    if n < 0:
        return power(inverse(p), -n)
    result = tuple(range(len(p)))
    base = p
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def sift(p, levels):
    """Strip p through a stabilizer chain.

    Returns the residue and the index of the level where stripping stopped
    (== len(levels) when p stripped all the way through).
    """
    for idx, (beta, table) in enumerate(levels):
        img = p[beta]
        if img == beta:
            continue
        entry = table.get(img)
        if entry is None:
            return p, idx
        p = compose(p, entry[1])
    return p, len(levels)


def extend_orbit(table, gens, new_index, pending):
    """Grow one level's orbit after ``gens[new_index]`` was appended.

    Existing representatives are kept; images of old orbit points under the
    new generator are explored first (in table insertion order), then the
    breadth-first closure of any new points under the full generator list.
    Every (old point, new generator) pair and every (new point, any
    generator) pair is appended to ``pending`` for later Schreier checking.
    """
    h = gens[new_index]
    frontier = []
    for a in list(table):
        pending.append((a, new_index))
        b = h[a]
        if b not in table:
            rep = compose(table[a][0], h)
            table[b] = (rep, inverse(rep))
            frontier.append(b)
    head = 0
    while head < len(frontier):
        b = frontier[head]
        head += 1
        for gi in range(len(gens)):
            pending.append((b, gi))
            c = gens[gi][b]
            if c not in table:
                rep = compose(table[b][0], gens[gi])
                table[c] = (rep, inverse(rep))
                frontier.append(c)
    return None


def process_pending(table, gens, pending, head, deeper):
    """Sift queued Schreier generators of one level.

    Consumes ``pending[head:]`` in order, forming for each pair (a, gi) the
    Schreier generator rep_a * g * rep_b^-1 and stripping it through the
    ``deeper`` chain. Stops at the first nontrivial residue. Returns
    (new_head, residue, stuck_index) with residue None when the queue was
    exhausted. A pair whose residue is returned still counts as consumed:
    once the residue is registered as a strong generator below, that
    Schreier generator is a member of the deeper chain's group.
    """
    identity = None
    while head < len(pending):
        a, gi = pending[head]
        head += 1
        g = gens[gi]
        b = g[a]
        sg = compose3(table[a][0], g, table[b][1])
        if identity is None:
            identity = tuple(range(len(sg)))
        if sg == identity:
            continue
        residue, idx = sift(sg, deeper)
        if residue != identity:
            return head, residue, idx
    return head, None, 0
