"""Pure-Python grove enumeration, the fallback for the compiled kernel."""


def enumerate_groves(nv, n, eu, ev):
    """Enumerate groves of a graph on vertices 0..nv-1 whose first n are nodes.

    eu, ev list edge endpoints.  A grove is an acyclic edge subset in which
    every component contains a node.  Returns a dict mapping the node
    partition (restricted growth labels, one per node) to the list of edge
    bitmasks of the groves inducing it.
    """
    m = len(eu)
    parent = list(range(nv))
    out = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def finish(mask):
        for w in range(n, nv):
            if find(w) >= n:
                # roots are kept minimal, so a root >= n means no node
                return
        seen = {}
        key = []
        for i in range(n):
            r = find(i)
            if r not in seen:
                seen[r] = len(seen)
            key.append(seen[r])
        out.setdefault(tuple(key), []).append(mask)

    def rec(k, mask):
        if k == m:
            finish(mask)
            return
        rec(k + 1, mask)
        a, b = find(eu[k]), find(ev[k])
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        rec(k + 1, mask | (1 << k))
        parent[b] = b

    rec(0, 0)
    return out


def grove_partitions(nv, n, eu, ev):
    """Set of node partitions (restricted growth labels) that carry a grove."""
    m = len(eu)
    parent = list(range(nv))
    out = set()

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(k):
        if k == m:
            for w in range(n, nv):
                if find(w) >= n:
                    return
            seen = {}
            out.add(tuple(seen.setdefault(find(i), len(seen)) for i in range(n)))
            return
        rec(k + 1)
        a, b = find(eu[k]), find(ev[k])
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        rec(k + 1)
        parent[b] = b

    rec(0)
    return out
