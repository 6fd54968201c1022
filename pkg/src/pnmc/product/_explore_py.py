"""Pure-Python synchronisation-product exploration.

Same contract and enumeration order as the compiled kernel in
``_explore.pyx``; used when the extension is unavailable.
"""

from __future__ import annotations

import itertools


def explore(off, ol, od, base, k, init, vglab, voff, cchild, clab, poff, pvec, pbase, radix, cap):
    """Breadth-first exploration of the product.

    Returns ``(states, src, lab, dst)`` with states as a flat list of
    ``k``-tuples, or ``None`` when more than ``cap`` states are reached.
    """
    off, ol, od, base = off.tolist(), ol.tolist(), od.tolist(), base.tolist()
    vglab, voff, cchild, clab = vglab.tolist(), voff.tolist(), cchild.tolist(), clab.tolist()
    poff, pvec, pbase = poff.tolist(), pvec.tolist(), pbase.tolist()
    start = tuple(init.tolist())
    index = {start: 0}
    states = [start]
    src: list[int] = []
    lab: list[int] = []
    dst: list[int] = []
    i = 0
    while i < len(states):
        t = states[i]
        emitted = set()
        for c in range(k):
            b = base[c] + t[c]
            j, hi = off[b], off[b + 1]
            while j < hi:
                l = ol[j]
                pb = pbase[c] + l
                for vi in range(poff[pb], poff[pb + 1]):
                    v = pvec[vi]
                    cells = range(voff[v], voff[v + 1])
                    choices = []
                    for cell in cells:
                        c2, l2 = cchild[cell], clab[cell]
                        b2 = base[c2] + t[c2]
                        succ = [od[x] for x in range(off[b2], off[b2 + 1]) if ol[x] == l2]
                        if not succ:
                            break
                        choices.append(succ)
                    else:
                        g = vglab[v]
                        for combo in itertools.product(*choices):
                            nxt = list(t)
                            for cell, d in zip(cells, combo):
                                nxt[cchild[cell]] = d
                            nxt = tuple(nxt)
                            nid = index.get(nxt)
                            if nid is None:
                                if len(states) >= cap:
                                    return None
                                nid = index[nxt] = len(states)
                                states.append(nxt)
                            if (g, nid) not in emitted:
                                emitted.add((g, nid))
                                src.append(i)
                                lab.append(g)
                                dst.append(nid)
                while j < hi and ol[j] == l:
                    j += 1
        i += 1
    return states, src, lab, dst
