"""Array-based accelerated build engine (compiled with numba).

This module is a drop-in replacement for the pure-python engine in
``engine``/``builders``: one compiled pass performs the whole two-level BFS
(child generation, condensation, the global extent dictionary, closure
verdicts, Hasse edge recording and every statistics counter) over flat numpy
arrays.  Results are bit-for-bit identical to the python engine -- the test
suite asserts equality of concepts, edges, per-concept touch counts and all
counters on every fuzz case.

Representation notes (behavior is unchanged by any of this):

  * The extent dictionary is an open-addressing table over packed 4-word
    entries ``[hash | key offset | key len << 32 | best intent size | concept
    id]`` with all extent keys appended to one arena.  Equality is always
    verified by comparing the stored key bytes; hashes only route probes.
  * Extent hashes are order-independent sums of per-object mixed words, so a
    child's hash accumulates during the same pass that scatters its objects.
  * Per-parent condensed lists live either in fixed-stride rows (childlists
    up to 64 symbols wide) or in a CSR block (wider), built lazily the
    first time a child of that parent is confirmed.
  * Children are ordered (extent size desc, smallest class attribute asc) at
    sprout time; the order is total, so it matches the python engine's
    processing-time sort exactly.
  * Object and symbol ids narrow to int16/int8 when the context fits.

Nothing here is part of the public API.
"""
import numpy as np
from numba import njit

H63 = np.uint64(0x7FFFFFFFFFFFFFFF)
DENSE_SYM_MAX = 64  # dense symbol arrays up to this childlist width
M32 = np.int64(0xFFFFFFFF)


@njit(cache=True, inline="always")
def _sethash(data, off, length, mixed):
    # order-independent: sum of per-object mixed words (sets are sorted, so
    # order independence is free; equality is always memeq-verified anyway)
    h = np.uint64(0)
    for k in range(length):
        h += mixed[data[off + k]]
    return h


@njit(cache=True, inline="always")
def _memeq(a, ao, b, bo, ln):
    for k in range(ln):
        if a[ao + k] != b[bo + k]:
            return False
    return True


@njit(cache=True, inline="always")
def _grow(arr, pos, need):
    if pos + need <= arr.size:
        return arr
    cap = max(arr.size, 16)
    while pos + need > cap:
        cap *= 2
    out = np.empty(cap, arr.dtype)
    out[:pos] = arr[:pos]
    return out


@njit(cache=True, inline="always")
def _upsert(table, imask, ent, n_ent, key_data, key_pos,
            src, soff, slen, best, h63):
    """Find-or-insert extent src[soff:soff+slen]; caller pre-ensured capacity.

    Entry layout (4 int64 per entry, one cache line):
      [0] 63-bit key hash   [1] key offset
      [2] key_len << 32 | best intent size   [3] concept id or -1
    """
    sl = h63 & imask
    while True:
        e = table[sl]
        if e == -1:
            e4 = 4 * n_ent
            table[sl] = np.int32(n_ent)
            ent[e4] = h63
            ent[e4 + 1] = key_pos
            ent[e4 + 2] = (slen << 32) | best
            ent[e4 + 3] = -1
            for k in range(slen):
                key_data[key_pos + k] = src[soff + k]
            return n_ent, n_ent + 1, key_pos + slen
        e4 = 4 * np.int64(e)
        pk = ent[e4 + 2]
        if ent[e4] == h63 and (pk >> 32) == slen and \
                _memeq(key_data, ent[e4 + 1], src, soff, slen):
            if best > (pk & M32):
                ent[e4 + 2] = (slen << 32) | best
            return np.int64(e), n_ent, key_pos
        sl = (sl + 1) & imask


@njit(cache=True, inline="always")
def _sprout(use_cnbr, koff, klen, j_excl, min_support, pint_len,
            mark_stamp, stamp, nsym, scr, cn_data,
            acc, catt_off, catt_len, catt_src,
            table, imask, ent, n_ent,
            key_data, key_pos, arena, wr):
    """Build + register the childlist of one concept; append record to arena.

    Scan source: condensed neighbour lists (use_cnbr, symbols densely indexed
    0..nsym-1) or raw adjacency with attribute marks.  NOTE ordering
    constraint: catt_src/key_data extent reads all happen before
    arena/key_data growth (register phase), so aliasing with the growing
    arrays is safe.  `scr` bundles fixed scratch arrays so the call stays
    under the interpreter's 30-arg limit (keeps it inlinable).
    """
    (row_indptr, row_data, cn_indptr, loc, attmark,
     symstamp, symcnt, symoff, touched, ltab, lstamp, hstate, cls_len,
     mixed, korder, cn_cnt2, g_off, g_len, g_natt, g_aoff, g_fill, g_grp_of, g_hash, att_buf,
     g_tv, g_hv) = scr
    tc = np.int64(0)
    st2 = stamp
    lmask = np.int64(ltab.size - 1)
    ngr = 0
    if use_cnbr:
        if nsym == 1:
            # only symbol is the sprouting child itself: no candidates
            arena = _grow(arena, wr, 1)
            arena[wr] = 0
            wr += 1
            return (tc, st2, np.int64(0), np.int64(0), acc, key_data,
                    key_pos, table, imask, ent, n_ent, arena, wr)
        if nsym <= DENSE_SYM_MAX:
            # dense symbols: class sizes bound each region, so a single
            # fused fill+hash pass suffices (no counting pass)
            run = np.int64(0)
            for s in range(nsym):
                symoff[s] = run
                symcnt[s] = np.int32(run)
                hstate[s] = np.uint64(0)
                b = np.int64(cls_len[s])
                if b > klen:
                    b = klen
                run += b
            acc = _grow(acc, 0, run)
            for p in range(klen):
                a = key_data[koff + p]
                mv = mixed[a]
                base = np.int64(loc[a]) * nsym
                for q in range(base, base + cn_cnt2[loc[a]]):
                    s = cn_data[q]
                    idx = symcnt[s]
                    acc[idx] = a
                    symcnt[s] = idx + 1
                    hstate[s] += mv
            # group symbols with identical extents (ascending symbol order)
            st2 = stamp + 1
            for s in range(nsym):
                co = symoff[s]
                cl = np.int64(symcnt[s]) - co
                if s == j_excl or cl == 0:
                    g_grp_of[s] = -1
                    continue
                tc += cl
                hh = hstate[s]
                h63v = np.int64(hh & H63)
                sl = np.int64(hh & np.uint64(lmask))
                gg = -1
                while lstamp[sl] == st2:
                    g0 = ltab[sl]
                    if g_hash[g0] == h63v and g_len[g0] == cl and \
                            _memeq(acc, g_off[g0], acc, co, cl):
                        gg = g0
                        break
                    sl = (sl + 1) & lmask
                if gg >= 0:
                    g_natt[gg] += catt_len[s]
                else:
                    gg = ngr
                    ngr += 1
                    g_off[gg] = co
                    g_len[gg] = cl
                    g_natt[gg] = catt_len[s]
                    g_hash[gg] = h63v
                    lstamp[sl] = st2
                    ltab[sl] = np.int32(gg)
                g_grp_of[s] = np.int32(gg)
            # merged attribute fill
            run2 = np.int64(0)
            for g in range(ngr):
                g_aoff[g] = run2
                run2 += g_natt[g]
                g_fill[g] = 0
            for s in range(nsym):
                gg = g_grp_of[s]
                if gg < 0:
                    continue
                o = catt_off[s]
                base = g_aoff[gg] + g_fill[gg]
                for k in range(catt_len[s]):
                    att_buf[base + k] = catt_src[o + k]
                g_fill[gg] += catt_len[s]
        else:
            # wide childlists: stamped discovery keeps the work proportional
            # to actual touches rather than childlist width
            st1 = stamp + 1
            st2 = st1 + 1
            nt = 0
            total = np.int64(0)
            for p in range(klen):
                la = loc[key_data[koff + p]]
                for q in range(cn_indptr[la], cn_indptr[la + 1]):
                    s = cn_data[q]
                    if s == j_excl:
                        continue
                    if symstamp[s] != st1:
                        symstamp[s] = st1
                        symcnt[s] = 0
                        touched[nt] = s
                        nt += 1
                    symcnt[s] += 1
                    total += 1
            for a2 in range(1, nt):
                v = touched[a2]
                b2 = a2 - 1
                while b2 >= 0 and touched[b2] > v:
                    touched[b2 + 1] = touched[b2]
                    b2 -= 1
                touched[b2 + 1] = v
            run = np.int64(0)
            for t2 in range(nt):
                s = touched[t2]
                symoff[s] = run
                run += symcnt[s]
                symcnt[s] = 0
            acc = _grow(acc, 0, run)
            for p in range(klen):
                a = key_data[koff + p]
                la = loc[a]
                for q in range(cn_indptr[la], cn_indptr[la + 1]):
                    s = cn_data[q]
                    if s == j_excl:
                        continue
                    acc[symoff[s] + symcnt[s]] = a
                    symcnt[s] += 1
                    tc += 1
            for t2 in range(nt):
                s = touched[t2]
                co = symoff[s]
                cl = np.int64(symcnt[s])
                hh = _sethash(acc, co, cl, mixed)
                sl = np.int64(hh & np.uint64(lmask))
                gg = -1
                while lstamp[sl] == st2:
                    g0 = ltab[sl]
                    if g_len[g0] == cl and _memeq(acc, g_off[g0], acc, co, cl):
                        gg = g0
                        break
                    sl = (sl + 1) & lmask
                if gg >= 0:
                    g_natt[gg] += catt_len[s]
                else:
                    gg = ngr
                    ngr += 1
                    g_off[gg] = co
                    g_len[gg] = cl
                    g_natt[gg] = catt_len[s]
                    g_hash[gg] = np.int64(hh & H63)
                    lstamp[sl] = st2
                    ltab[sl] = np.int32(gg)
                g_grp_of[t2] = np.int32(gg)
            run2 = np.int64(0)
            for g in range(ngr):
                g_aoff[g] = run2
                run2 += g_natt[g]
                g_fill[g] = 0
            for t2 in range(nt):
                gg = g_grp_of[t2]
                s = touched[t2]
                o = catt_off[s]
                base = g_aoff[gg] + g_fill[gg]
                for k in range(catt_len[s]):
                    att_buf[base + k] = catt_src[o + k]
                g_fill[gg] += catt_len[s]
        for g in range(ngr):
            a0 = g_aoff[g]
            att_buf[a0:a0 + g_natt[g]].sort()
    else:
        # raw adjacency scan with stamped symbol discovery
        st1 = stamp + 1
        st2 = st1 + 1
        nt = 0
        total = np.int64(0)
        for p in range(klen):
            a = key_data[koff + p]
            for q in range(row_indptr[a], row_indptr[a + 1]):
                s = row_data[q]
                if attmark[s] == mark_stamp:
                    continue
                if symstamp[s] != st1:
                    symstamp[s] = st1
                    symcnt[s] = 0
                    touched[nt] = s
                    nt += 1
                symcnt[s] += 1
                total += 1
        # insertion sort (small, nearly ascending already)
        for a2 in range(1, nt):
            v = touched[a2]
            b2 = a2 - 1
            while b2 >= 0 and touched[b2] > v:
                touched[b2 + 1] = touched[b2]
                b2 -= 1
            touched[b2 + 1] = v
        run = np.int64(0)
        for t2 in range(nt):
            s = touched[t2]
            symoff[s] = run
            run += symcnt[s]
            symcnt[s] = 0
        acc = _grow(acc, 0, run)
        # fill pass (counts the work done for this concept)
        for p in range(klen):
            a = key_data[koff + p]
            for q in range(row_indptr[a], row_indptr[a + 1]):
                s = row_data[q]
                if attmark[s] == mark_stamp:
                    continue
                acc[symoff[s] + symcnt[s]] = a
                symcnt[s] += 1
                tc += 1
        # group symbols by identical extent (stamped open-addressing)
        for t2 in range(nt):
            s = touched[t2]
            co = symoff[s]
            cl = np.int64(symcnt[s])
            hh = _sethash(acc, co, cl, mixed)
            sl = np.int64(hh & np.uint64(lmask))
            gg = -1
            while lstamp[sl] == st2:
                g0 = ltab[sl]
                if g_len[g0] == cl and _memeq(acc, g_off[g0], acc, co, cl):
                    gg = g0
                    break
                sl = (sl + 1) & lmask
            if gg >= 0:
                g_natt[gg] += 1
            else:
                gg = ngr
                ngr += 1
                g_off[gg] = co
                g_len[gg] = cl
                g_natt[gg] = np.int32(1)
                g_hash[gg] = np.int64(hh & H63)
                lstamp[sl] = st2
                ltab[sl] = np.int32(gg)
            g_grp_of[t2] = np.int32(gg)
        run2 = np.int64(0)
        for g in range(ngr):
            g_aoff[g] = run2
            run2 += g_natt[g]
            g_fill[g] = 0
        for t2 in range(nt):
            gg = g_grp_of[t2]
            att_buf[g_aoff[gg] + g_fill[gg]] = np.int32(touched[t2])
            g_fill[gg] += 1
    # order the kept children now (extent size desc, smallest attribute
    # asc -- a total order, sibling classes never share attributes), so the
    # record is written in final processing order
    nkept = np.int64(0)
    tot_key = np.int64(0)
    rec = np.int64(1)
    sk = np.int64(0)
    for g in range(ngr):
        if min_support > 0 and g_len[g] < min_support:
            sk += 1
            continue
        korder[nkept] = np.int32(g)
        nkept += 1
        tot_key += g_len[g]
        rec += 2 + g_natt[g]
    for i2 in range(1, nkept):
        gv = korder[i2]
        lv = g_len[gv]
        mv2 = att_buf[g_aoff[gv]]
        j2 = i2 - 1
        while j2 >= 0:
            go = korder[j2]
            if g_len[go] > lv or (g_len[go] == lv and
                                  att_buf[g_aoff[go]] < mv2):
                break
            korder[j2 + 1] = go
            j2 -= 1
        korder[j2 + 1] = gv
    arena = _grow(arena, wr, rec)
    key_data = _grow(key_data, key_pos, tot_key)
    ent = _grow(ent, n_ent * 4, nkept * 4)
    tcap = np.int64(table.size)
    if (n_ent + nkept + 1) * 10 >= tcap * 7:
        while (n_ent + nkept + 1) * 10 >= tcap * 7:
            tcap *= 2
        imask = tcap - 1
        table = np.full(tcap, -1, np.int32)
        for e0 in range(n_ent):
            sl = ent[4 * e0] & imask
            while table[sl] != -1:
                sl = (sl + 1) & imask
            table[sl] = np.int32(e0)
    lk = np.int64(0)
    arena[wr] = np.int32(nkept)
    wr += 1
    # staged probe: tight load sweeps keep many cache misses in flight
    for i2 in range(nkept):
        g_tv[i2] = table[g_hash[korder[i2]] & imask]
    kw = np.int64(0)
    for i2 in range(nkept):
        e = np.int64(g_tv[i2])
        if e >= 0:
            hv = ent[4 * e]
            g_hv[i2] = hv
            if hv == g_hash[korder[i2]]:
                kw ^= key_data[ent[4 * e + 1]]
    g_hv[nkept] = kw  # keep the warming loads observable
    for i2 in range(nkept):
        g = korder[i2]
        e = np.int64(g_tv[i2])
        gl = np.int64(g_len[g])
        best = pint_len + g_natt[g]
        if e >= 0 and g_hv[i2] == g_hash[g]:
            pk = ent[4 * e + 2]
            if (pk >> 32) == gl and _memeq(key_data, ent[4 * e + 1],
                                           acc, g_off[g], gl):
                if best > (pk & M32):
                    ent[4 * e + 2] = (gl << 32) | best
            else:
                e, n_ent, key_pos = _upsert(table, imask, ent, n_ent,
                                            key_data, key_pos,
                                            acc, g_off[g], gl,
                                            best, g_hash[g])
        else:
            e, n_ent, key_pos = _upsert(table, imask, ent, n_ent,
                                        key_data, key_pos,
                                        acc, g_off[g], gl,
                                        best, g_hash[g])
        lk += 1
        arena[wr] = np.int32(e)
        arena[wr + 1] = g_natt[g]
        wr += 2
        a0 = g_aoff[g]
        for k in range(g_natt[g]):
            arena[wr + k] = att_buf[a0 + k]
        wr += g_natt[g]
    return (tc, st2, lk, sk, acc, key_data, key_pos, table, imask,
            ent, n_ent, arena, wr)


@njit(cache=True)
def _bfs_kernel(n, m, row_indptr, row_data, condensed, min_support,
                key_data, acc, loc, cn_data):
    # extent dictionary: packed entries + open-addressing index table
    # (key_data/acc/loc/cn_data come from the caller so narrow integer
    #  dtypes can be selected when object/symbol ranges allow)
    key_pos = np.int64(0)
    ent = np.empty(4096, np.int64)
    n_ent = np.int64(0)
    tcap = np.int64(2048)
    imask = tcap - 1
    table = np.full(tcap, -1, np.int32)
    # concepts
    cint_off = np.empty(1024, np.int64)
    cint_len = np.empty(1024, np.int32)
    cent = np.empty(1024, np.int32)
    touches = np.empty(1024, np.int64)
    n_con = np.int64(0)
    int_data = np.empty(np.int64(max(4 * m + 64, 1024)), np.int32)
    int_pos = np.int64(0)
    # edges
    eu = np.empty(1024, np.int32)
    ev = np.empty(1024, np.int32)
    n_edge = np.int64(0)
    # childlist arena (FIFO: rd consumes records, wr appends)
    arena = np.empty(4096, np.int32)
    rd = np.int64(0)
    wr = np.int64(0)
    # scratch
    attmark = np.zeros(max(m, 1), np.int64)
    symstamp = np.zeros(max(m, 1), np.int64)
    symcnt = np.zeros(max(m, 1), np.int32)
    symoff = np.zeros(max(m, 1), np.int64)
    touched = np.empty(m + 1, np.int32)
    lcap = np.int64(4)
    while lcap < 2 * (m + 2):
        lcap *= 2
    ltab = np.zeros(lcap, np.int32)
    lstamp = np.zeros(lcap, np.int64)
    g_off = np.empty(m + 1, np.int64)
    g_len = np.empty(m + 1, np.int64)
    g_natt = np.empty(m + 1, np.int32)
    g_aoff = np.empty(m + 1, np.int64)
    g_fill = np.empty(m + 1, np.int32)
    g_grp_of = np.empty(m + 1, np.int32)
    g_hash = np.empty(m + 1, np.int64)
    g_tv = np.empty(m + 2, np.int32)
    g_hv = np.empty(m + 2, np.int64)
    att_buf = np.empty(max(m, 1), np.int32)
    so_e = np.empty(m + 1, np.int32)
    so_natt = np.empty(m + 1, np.int32)
    so_aoff = np.empty(m + 1, np.int64)
    cn_indptr = np.zeros(n + 2, np.int64)
    cn_cnt = np.zeros(max(n, 1), np.int32)
    hstate = np.empty(max(m, 1), np.uint64)
    cls_len = np.empty(m + 1, np.int64)
    mixed = np.empty(max(n, 1), np.uint64)
    for g in range(n):
        z = np.uint64(g) + np.uint64(0x9E3779B97F4A7C16)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        mixed[g] = z ^ (z >> np.uint64(31))
    korder = np.empty(m + 2, np.int32)
    cn_cnt2 = cn_cnt
    stamp = np.int64(0)
    # fixed scratch bundle handed to _sprout (nothing in here is ever rebound)
    scr = (row_indptr, row_data, cn_indptr, loc, attmark,
           symstamp, symcnt, symoff, touched, ltab, lstamp, hstate, cls_len,
           mixed, korder, cn_cnt2, g_off, g_len, g_natt, g_aoff, g_fill, g_grp_of, g_hash, att_buf,
           g_tv, g_hv)
    # stats
    lookups = np.int64(0)
    elim = np.int64(0)
    skips = np.int64(0)
    queue_hw = np.int64(0)

    # top concept: extent = all objects, intent = full columns
    colcount = np.zeros(max(m, 1), np.int64)
    for p in range(row_indptr[n]):
        colcount[row_data[p]] += 1
    ti = np.int64(0)
    for i in range(m):
        if colcount[i] == n:
            ti += 1
    int_data = _grow(int_data, int_pos, ti)
    cint_off[0] = 0
    cint_len[0] = np.int32(ti)
    for i in range(m):
        if colcount[i] == n:
            int_data[int_pos] = np.int32(i)
            int_pos += 1
    key_data = _grow(key_data, key_pos, n)
    for g in range(n):
        key_data[g] = np.int32(g)
    h63 = np.int64(_sethash(key_data, 0, n, mixed) & H63)
    sl = h63 & imask
    ent[0] = h63
    ent[1] = 0
    ent[2] = (np.int64(n) << 32) | ti
    ent[3] = 0
    table[sl] = 0
    n_ent = 1
    key_pos = np.int64(n)
    cent[0] = 0
    n_con = 1
    queue_hw = 1

    empty64 = np.empty(0, np.int64)
    empty32 = np.empty(0, np.int32)
    if min_support > 0 and n < min_support:
        return (np.int64(0), np.zeros(1, np.int64), empty32,
                np.zeros(1, np.int64), empty32, empty32, empty32,
                empty64, elim, lookups, np.int64(0), skips, n_ent)

    # root sprout: raw adjacency skipping the top intent
    stamp += 1
    mark = stamp
    for k in range(ti):
        attmark[int_data[k]] = mark
    (tc, stamp, lk, sk, acc, key_data, key_pos, table, imask,
     ent, n_ent, arena, wr) = _sprout(
        False, np.int64(0), np.int64(n), np.int64(-1), min_support,
        ti, mark, stamp, np.int64(0), scr, cn_data, acc,
        so_aoff, so_natt, arena,
        table, imask, ent, n_ent,
        key_data, key_pos, arena, wr)
    touches[0] = tc
    lookups += lk
    skips += sk

    proc = np.int64(0)
    while proc < n_con:
        t = np.int64(arena[rd])
        rd += 1
        if t > 0:
            # records are already in processing order (sorted at sprout time)
            for jj in range(t):
                so_e[jj] = arena[rd]
                so_natt[jj] = arena[rd + 1]
                rd += 2
                so_aoff[jj] = rd
                rd += so_natt[jj]
            # pull the children's dictionary lines toward the cache in one
            # tight sweep before the dependent classification loop
            kw2 = np.int64(0)
            for jj in range(t):
                kw2 ^= ent[4 * np.int64(so_e[jj]) + 2]
            g_hv[m + 1] = kw2
            pe = np.int64(cent[proc])
            pko = ent[4 * pe + 1]
            pkl = ent[4 * pe + 2] >> 32
            pil = np.int64(cint_len[proc])
            pio = cint_off[proc]
            csr_ok = (not condensed) or t <= 1
            eu = _grow(eu, n_edge, t)
            ev = _grow(ev, n_edge, t)
            cint_off = _grow(cint_off, n_con, t)
            cint_len = _grow(cint_len, n_con, t)
            cent = _grow(cent, n_con, t)
            touches = _grow(touches, n_con, t)
            for r2 in range(t):
                e0 = np.int64(so_e[r2])
                e4 = 4 * e0
                lookups += 1
                cand = pil + so_natt[r2]
                pk = ent[e4 + 2]
                if (pk & M32) > cand:
                    elim += 1
                elif ent[e4 + 3] >= 0:
                    eu[n_edge] = np.int32(proc)
                    ev[n_edge] = np.int32(ent[e4 + 3])
                    n_edge += 1
                else:
                    cid = n_con
                    ent[e4 + 3] = cid
                    cent[cid] = np.int32(e0)
                    nl = pil + so_natt[r2]
                    int_data = _grow(int_data, int_pos, nl)
                    # merge parent intent with the new class attributes
                    ia = pio
                    ib = so_aoff[r2]
                    na = pio + pil
                    nb = so_aoff[r2] + so_natt[r2]
                    w = int_pos
                    while ia < na and ib < nb:
                        va = int_data[ia]
                        vb = arena[ib]
                        if va < vb:
                            int_data[w] = va
                            ia += 1
                        else:
                            int_data[w] = vb
                            ib += 1
                        w += 1
                    while ia < na:
                        int_data[w] = int_data[ia]
                        ia += 1
                        w += 1
                    while ib < nb:
                        int_data[w] = arena[ib]
                        ib += 1
                        w += 1
                    cint_off[cid] = int_pos
                    cint_len[cid] = np.int32(nl)
                    int_pos += nl
                    eu[n_edge] = np.int32(proc)
                    ev[n_edge] = np.int32(cid)
                    n_edge += 1
                    n_con += 1
                    ql = n_con - proc - 1
                    if ql > queue_hw:
                        queue_hw = ql
                    if condensed:
                        if not csr_ok:
                            # condensed view, built lazily on first confirmed
                            # child: cnbr lists over the parent extent
                            for p in range(pkl):
                                loc[key_data[pko + p]] = np.int32(p)
                                cn_cnt[p] = 0
                            if t <= DENSE_SYM_MAX:
                                # fixed-stride lists skip the counting pass
                                cn_data = _grow(cn_data, 0, np.int64(pkl) * t)
                                for rr in range(t):
                                    be4 = 4 * np.int64(so_e[rr])
                                    kko = ent[be4 + 1]
                                    kkl = ent[be4 + 2] >> 32
                                    cls_len[rr] = kkl
                                    for p2 in range(kkl):
                                        pos = np.int64(
                                            loc[key_data[kko + p2]])
                                        cn_data[pos * t + cn_cnt[pos]] = rr
                                        cn_cnt[pos] += 1
                            else:
                                for p in range(pkl):
                                    cn_indptr[p + 1] = 0
                                tot = np.int64(0)
                                for rr in range(t):
                                    be4 = 4 * np.int64(so_e[rr])
                                    kko = ent[be4 + 1]
                                    kkl = ent[be4 + 2] >> 32
                                    tot += kkl
                                    for p2 in range(kkl):
                                        cn_indptr[
                                            loc[key_data[kko + p2]] + 1] += 1
                                cn_data = _grow(cn_data, 0, tot)
                                for p in range(pkl):
                                    cn_indptr[p + 1] += cn_indptr[p]
                                for rr in range(t):
                                    be4 = 4 * np.int64(so_e[rr])
                                    kko = ent[be4 + 1]
                                    kkl = ent[be4 + 2] >> 32
                                    for p2 in range(kkl):
                                        pos = loc[key_data[kko + p2]]
                                        cn_data[cn_indptr[pos]
                                                + cn_cnt[pos]] = rr
                                        cn_cnt[pos] += 1
                            csr_ok = True
                        (tc, stamp, lk, sk, acc, key_data, key_pos, table,
                         imask, ent, n_ent, arena, wr) = _sprout(
                            True, ent[e4 + 1], ent[e4 + 2] >> 32,
                            np.int64(r2), min_support, nl,
                            np.int64(-1), stamp, np.int64(t), scr, cn_data,
                            acc,
                            so_aoff, so_natt, arena,
                            table, imask, ent, n_ent,
                            key_data, key_pos, arena, wr)
                    else:
                        stamp += 1
                        mark = stamp
                        for k in range(nl):
                            attmark[int_data[cint_off[cid] + k]] = mark
                        (tc, stamp, lk, sk, acc, key_data, key_pos, table,
                         imask, ent, n_ent, arena, wr) = _sprout(
                            False, ent[e4 + 1], ent[e4 + 2] >> 32,
                            np.int64(-1), min_support, nl,
                            mark, stamp, np.int64(0), scr, cn_data, acc,
                            so_aoff, so_natt, arena,
                            table, imask, ent, n_ent,
                            key_data, key_pos, arena, wr)
                    touches[cid] = tc
                    lookups += lk
                    skips += sk
        proc += 1

    # outputs
    ext_indptr = np.empty(n_con + 1, np.int64)
    ext_indptr[0] = 0
    for c in range(n_con):
        ext_indptr[c + 1] = ext_indptr[c] + (ent[4 * np.int64(cent[c]) + 2] >> 32)
    ext_data = np.empty(ext_indptr[n_con], np.int32)
    for c in range(n_con):
        e4 = 4 * np.int64(cent[c])
        o = ent[e4 + 1]
        b = ext_indptr[c]
        for k in range(ent[e4 + 2] >> 32):
            ext_data[b + k] = key_data[o + k]
    int_indptr = np.empty(n_con + 1, np.int64)
    int_indptr[0] = 0
    for c in range(n_con):
        int_indptr[c + 1] = int_indptr[c] + cint_len[c]
    return (n_con, ext_indptr, ext_data, int_indptr, int_data[:int_pos].copy(),
            eu[:n_edge].copy(), ev[:n_edge].copy(), touches[:n_con].copy(),
            elim, lookups, queue_hw, skips, n_ent)


# ---------------------------------------------------------------------------
# python wrapper around the kernel
# ---------------------------------------------------------------------------

def _to_csr(n, rows):
    indptr = np.zeros(n + 1, np.int64)
    for g in range(n):
        indptr[g + 1] = indptr[g] + len(rows[g])
    data = np.empty(int(indptr[n]), np.int32)
    for g in range(n):
        data[indptr[g]:indptr[g + 1]] = sorted(rows[g])
    return indptr, data


def build_arrays(n, m, rows, condensed=True, min_support=0, narrow=True):
    """Run the compiled build; return flat arrays plus the stats dict.

    Returns ``(n_con, ext_indptr, ext_data, int_indptr, int_data, edge_pred,
    edge_succ, touches_per_concept, stats)`` where extents/intents are CSR
    slices of the two data arrays and ``stats`` matches the python engine's
    counter names.  Concepts are NOT materialized here -- on large builds
    tuple conversion costs more than the build itself, so callers keep the
    arrays and materialize lazily.
    """
    indptr, data = _to_csr(n, rows)
    # narrow object/symbol dtypes when ranges allow: smaller hot footprint
    small = narrow and n <= 32000 and m <= 120
    obj_dt = np.int16 if small else np.int32
    sym_dt = np.int8 if small else np.int32
    key_data = np.empty(max(4 * n + 64, 1024), obj_dt)
    acc = np.empty(1024, obj_dt)
    loc = np.zeros(max(n, 1), obj_dt)
    cn_data = np.empty(1024, sym_dt)
    (nc, xi, xd, ii, idt, eu, ev, tch, elim, lk, hw, sk, nent) = _bfs_kernel(
        np.int64(n), np.int64(m), indptr, data,
        condensed, np.int64(min_support),
        key_data, acc, loc, cn_data)
    stats = dict(eliminations=int(elim), dict_lookups=int(lk),
                 queue_high_water=int(hw), support_skips=int(sk),
                 dict_entries=int(nent))
    return nc, xi, xd, ii, idt, eu, ev, tch, stats
