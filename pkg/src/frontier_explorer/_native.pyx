# cython: boundscheck=False, wraparound=False, initializedcheck=False, language_level=3
"""Compiled kernels mirroring frontier_explorer._kernels_py.

Must stay operation-for-operation identical to the pure-Python reference:
same queue disciplines, same neighbor orders, same floating-point expression
order in the ray walk. The parity test suite compares both backends on
random inputs; run it after touching either file.
"""

from libc.math cimport INFINITY, M_PI, cos, sin

import numpy as np

DEF UNKNOWN = 0
DEF FREE = 1
DEF OCCUPIED = 2

DEF M_NONE = 0
DEF M_MAP_OPEN = 1
DEF M_MAP_CLOSED = 2
DEF M_FRONTIER_OPEN = 3
DEF M_FRONTIER_CLOSED = 4

DEF RAY_EDGE_EPS = 1e-12

cdef int OFF8_R[8]
cdef int OFF8_C[8]
cdef int OFF4_R[4]
cdef int OFF4_C[4]
OFF8_R[0] = -1; OFF8_C[0] = -1
OFF8_R[1] = -1; OFF8_C[1] = 0
OFF8_R[2] = -1; OFF8_C[2] = 1
OFF8_R[3] = 0;  OFF8_C[3] = -1
OFF8_R[4] = 0;  OFF8_C[4] = 1
OFF8_R[5] = 1;  OFF8_C[5] = -1
OFF8_R[6] = 1;  OFF8_C[6] = 0
OFF8_R[7] = 1;  OFF8_C[7] = 1
OFF4_R[0] = -1; OFF4_C[0] = 0
OFF4_R[1] = 0;  OFF4_C[1] = -1
OFF4_R[2] = 0;  OFF4_C[2] = 1
OFF4_R[3] = 1;  OFF4_C[3] = 0


cdef inline bint _is_frontier(const unsigned char[:, ::1] cells, int r, int c,
                              int h, int w, const int* off_r, const int* off_c,
                              int n_off) nogil:
    cdef int i, nr, nc
    if cells[r, c] != UNKNOWN:
        return False
    for i in range(n_off):
        nr = r + off_r[i]
        nc = c + off_c[i]
        if 0 <= nr < h and 0 <= nc < w and cells[nr, nc] == FREE:
            return True
    return False


def cast_ray_kernel(const unsigned char[:, ::1] world, int r0, int c0,
                    double angle, double max_range):
    """See _kernels_py.cast_ray_kernel."""
    cdef int h = world.shape[0]
    cdef int w = world.shape[1]
    cdef double d_row = sin(angle)
    cdef double d_col = cos(angle)
    cdef int step_r = 1 if d_row > 0.0 else (-1 if d_row < 0.0 else 0)
    cdef int step_c = 1 if d_col > 0.0 else (-1 if d_col < 0.0 else 0)
    cdef double t_max_r = 0.5 / (-d_row if d_row < 0.0 else d_row) if step_r != 0 else INFINITY
    cdef double t_max_c = 0.5 / (-d_col if d_col < 0.0 else d_col) if step_c != 0 else INFINITY
    cdef double t_delta_r = 1.0 / (-d_row if d_row < 0.0 else d_row) if step_r != 0 else INFINITY
    cdef double t_delta_c = 1.0 / (-d_col if d_col < 0.0 else d_col) if step_c != 0 else INFINITY
    cdef int r = r0
    cdef int c = c0
    cdef double t_entry, diff
    traversed = [(r, c)]
    hit = None
    while True:
        diff = t_max_r - t_max_c
        if -RAY_EDGE_EPS <= diff <= RAY_EDGE_EPS:
            t_entry = t_max_r if t_max_r < t_max_c else t_max_c
            r += step_r
            c += step_c
            t_max_r += t_delta_r
            t_max_c += t_delta_c
        elif t_max_r < t_max_c:
            t_entry = t_max_r
            r += step_r
            t_max_r += t_delta_r
        else:
            t_entry = t_max_c
            c += step_c
            t_max_c += t_delta_c
        if t_entry > max_range:
            break
        if not (0 <= r < h and 0 <= c < w):
            break
        if world[r, c] == OCCUPIED:
            hit = (r, c)
            break
        traversed.append((r, c))
    return traversed, hit


def sense_kernel(const unsigned char[:, ::1] world, unsigned char[:, ::1] belief,
                 int r0, int c0, double max_range, int ray_count):
    """See _kernels_py.sense_kernel."""
    cdef int h = world.shape[0]
    cdef int w = world.shape[1]
    cdef int newly = 0
    cdef int k, r, c, step_r, step_c
    cdef double angle, d_row, d_col, t_max_r, t_max_c, t_delta_r, t_delta_c
    cdef double t_entry, diff
    with nogil:
        for k in range(ray_count):
            angle = 2.0 * M_PI * k / ray_count
            d_row = sin(angle)
            d_col = cos(angle)
            step_r = 1 if d_row > 0.0 else (-1 if d_row < 0.0 else 0)
            step_c = 1 if d_col > 0.0 else (-1 if d_col < 0.0 else 0)
            t_max_r = 0.5 / (-d_row if d_row < 0.0 else d_row) if step_r != 0 else INFINITY
            t_max_c = 0.5 / (-d_col if d_col < 0.0 else d_col) if step_c != 0 else INFINITY
            t_delta_r = 1.0 / (-d_row if d_row < 0.0 else d_row) if step_r != 0 else INFINITY
            t_delta_c = 1.0 / (-d_col if d_col < 0.0 else d_col) if step_c != 0 else INFINITY
            r = r0
            c = c0
            if belief[r, c] == UNKNOWN:
                newly += 1
            belief[r, c] = FREE
            while True:
                diff = t_max_r - t_max_c
                if -RAY_EDGE_EPS <= diff <= RAY_EDGE_EPS:
                    t_entry = t_max_r if t_max_r < t_max_c else t_max_c
                    r += step_r
                    c += step_c
                    t_max_r += t_delta_r
                    t_max_c += t_delta_c
                elif t_max_r < t_max_c:
                    t_entry = t_max_r
                    r += step_r
                    t_max_r += t_delta_r
                else:
                    t_entry = t_max_c
                    c += step_c
                    t_max_c += t_delta_c
                if t_entry > max_range:
                    break
                if not (0 <= r < h and 0 <= c < w):
                    break
                if world[r, c] == OCCUPIED:
                    if belief[r, c] == UNKNOWN:
                        newly += 1
                    belief[r, c] = OCCUPIED
                    break
                if belief[r, c] == UNKNOWN:
                    newly += 1
                belief[r, c] = FREE
    return newly


def wfd_kernel(const unsigned char[:, ::1] cells, int pose_r, int pose_c, bint eight):
    """See _kernels_py.wfd_kernel."""
    cdef int h = cells.shape[0]
    cdef int w = cells.shape[1]
    cdef int n = h * w
    cdef const int* off_r
    cdef const int* off_c
    cdef int n_off
    if eight:
        off_r = OFF8_R
        off_c = OFF8_C
        n_off = 8
    else:
        off_r = OFF4_R
        off_c = OFF4_C
        n_off = 4

    marker_arr = np.zeros((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] marker = marker_arr
    # FIFO queues of flattened cell indexes; capacity 8n+8 covers the worst
    # case (every processed cell enqueues all neighbors, plus re-enqueues of
    # FRONTIER_CLOSED fringe cells).
    qm_arr = np.empty(8 * n + 8, dtype=np.int32)
    qf_arr = np.empty(8 * n + 8, dtype=np.int32)
    cdef int[::1] qm = qm_arr
    cdef int[::1] qf = qf_arr
    cdef Py_ssize_t qm_head = 0, qm_tail = 0, qf_head, qf_tail

    cdef int visited = 0
    cdef int pr, pc, qr, qc, nr, nc, i, idx
    cdef unsigned char m
    frontiers = []

    qm[qm_tail] = pose_r * w + pose_c
    qm_tail += 1
    marker[pose_r, pose_c] = M_MAP_OPEN

    while qm_head < qm_tail:
        idx = qm[qm_head]
        qm_head += 1
        pr = idx // w
        pc = idx - pr * w
        if marker[pr, pc] == M_MAP_CLOSED:
            continue
        visited += 1
        if _is_frontier(cells, pr, pc, h, w, off_r, off_c, n_off):
            qf_head = 0
            qf_tail = 0
            qf[qf_tail] = pr * w + pc
            qf_tail += 1
            marker[pr, pc] = M_FRONTIER_OPEN
            new_frontier = []
            while qf_head < qf_tail:
                idx = qf[qf_head]
                qf_head += 1
                qr = idx // w
                qc = idx - qr * w
                m = marker[qr, qc]
                if m == M_MAP_CLOSED or m == M_FRONTIER_CLOSED:
                    continue
                visited += 1
                if _is_frontier(cells, qr, qc, h, w, off_r, off_c, n_off):
                    new_frontier.append((qr, qc))
                    for i in range(n_off):
                        nr = qr + off_r[i]
                        nc = qc + off_c[i]
                        if 0 <= nr < h and 0 <= nc < w:
                            m = marker[nr, nc]
                            if m != M_FRONTIER_OPEN and m != M_FRONTIER_CLOSED and m != M_MAP_CLOSED:
                                qf[qf_tail] = nr * w + nc
                                qf_tail += 1
                                marker[nr, nc] = M_FRONTIER_OPEN
                marker[qr, qc] = M_FRONTIER_CLOSED
            frontiers.append(new_frontier)
            for fr, fc in new_frontier:
                marker[fr, fc] = M_MAP_CLOSED
            continue
        if cells[pr, pc] == FREE:
            for i in range(n_off):
                nr = pr + off_r[i]
                nc = pc + off_c[i]
                if 0 <= nr < h and 0 <= nc < w:
                    m = marker[nr, nc]
                    if m != M_MAP_OPEN and m != M_MAP_CLOSED:
                        qm[qm_tail] = nr * w + nc
                        qm_tail += 1
                        if m == M_NONE:
                            marker[nr, nc] = M_MAP_OPEN
        marker[pr, pc] = M_MAP_CLOSED
    return frontiers, visited


def naive_kernel(const unsigned char[:, ::1] cells, bint eight):
    """See _kernels_py.naive_kernel."""
    cdef int h = cells.shape[0]
    cdef int w = cells.shape[1]
    cdef int n = h * w
    cdef const int* off_r
    cdef const int* off_c
    cdef int n_off
    if eight:
        off_r = OFF8_R
        off_c = OFF8_C
        n_off = 8
    else:
        off_r = OFF4_R
        off_c = OFF4_C
        n_off = 4

    grouped_arr = np.zeros((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] grouped = grouped_arr
    q_arr = np.empty(n + 8, dtype=np.int32)
    cdef int[::1] q = q_arr
    cdef Py_ssize_t q_head, q_tail

    cdef int r, c, qr, qc, nr, nc, i, idx
    frontiers = []

    for r in range(h):
        for c in range(w):
            if grouped[r, c]:
                continue
            if not _is_frontier(cells, r, c, h, w, off_r, off_c, n_off):
                continue
            grouped[r, c] = 1
            q_head = 0
            q_tail = 0
            q[q_tail] = r * w + c
            q_tail += 1
            component = []
            while q_head < q_tail:
                idx = q[q_head]
                q_head += 1
                qr = idx // w
                qc = idx - qr * w
                component.append((qr, qc))
                for i in range(n_off):
                    nr = qr + off_r[i]
                    nc = qc + off_c[i]
                    if 0 <= nr < h and 0 <= nc < w and not grouped[nr, nc]:
                        if _is_frontier(cells, nr, nc, h, w, off_r, off_c, n_off):
                            grouped[nr, nc] = 1
                            q[q_tail] = nr * w + nc
                            q_tail += 1
            frontiers.append(component)
    return frontiers, n
