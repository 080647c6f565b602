/* Fast delta^2 = 0 sweep for the twisted ribbon graph differential.
 *
 * Mirrors the pure Python implementation term by term: the same raw dart
 * numbering for every generated term, the same canonical form (BFS encoding
 * minimized over admissible roots) and the same orientation sign rules
 * (d even: edge-order parity; d odd: direction flips times black-order
 * parity).  Cross-validated against the Python differential in the test
 * suite before the big sweep relies on it.
 *
 * Input (stdin), driven by the Python wrapper:
 *   S                      start of a slice: the inner cache is reset
 *   G nd alpha.. sig.. vcol.. blab..   one canonical graph (vcol 0 = black)
 * Modes (argv): sweep DPAR | delta DPAR
 *   sweep: check delta(delta(G)) == 0 for every input graph
 *   delta: print the canonical terms of delta(G) with coefficients (x2)
 *
 * Coefficients are tracked in half units (the black split carries 1/2).
 */

#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define MAXD 48            /* max darts: sweep needs 2E+4 <= 32 */
#define MAXMAP 512         /* max stored best mappings (automorphisms) */

typedef struct {
    int nd;
    uint8_t alf[MAXD];
    uint8_t sig[MAXD];
    uint8_t vcol[MAXD];    /* 0 = black, >= 1 white label */
    uint8_t blab[MAXD];    /* boundary label per dart */
    int nblack;
    uint8_t border[MAXD];  /* representative dart per black, list order */
} Graph;

static void die(const char *msg) {
    fprintf(stderr, "delta2: %s\n", msg);
    exit(1);
}

/* ---------------- canonical form ---------------- */

/* BFS encoding from one root; returns 0 if graph disconnected (dies). */
static void bfs_order(const Graph *g, int root, uint8_t *mapping,
                      uint8_t *order) {
    int nd = g->nd, nxt = 1, head = 0;
    memset(mapping, 0xff, nd);
    mapping[root] = 0;
    order[0] = (uint8_t)root;
    while (head < nxt) {
        int x = order[head++];
        int y = g->sig[x];
        if (mapping[y] == 0xff) { mapping[y] = (uint8_t)nxt; order[nxt++] = (uint8_t)y; }
        y = g->alf[x];
        if (mapping[y] == 0xff) { mapping[y] = (uint8_t)nxt; order[nxt++] = (uint8_t)y; }
    }
    if (nxt != nd) die("disconnected graph");
}

static int perm_parity_from_keys(const int *keys, int n) {
    /* parity of the permutation sorting keys ascending (keys distinct) */
    int inv = 0;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            if (keys[i] > keys[j]) inv++;
    return (inv & 1) ? -1 : 1;
}

static int black_min_mapped(const Graph *g, int rep, const uint8_t *mapping) {
    int mn = 255, x = rep;
    do {
        if (mapping[x] < mn) mn = mapping[x];
        x = g->sig[x];
    } while (x != rep);
    return mn;
}

static int relabel_sign(const Graph *g, const uint8_t *mapping, int dpar) {
    int nd = g->nd;
    if (!dpar) {
        int keys[MAXD / 2], ne = 0;
        for (int x = 0; x < nd; x++)
            if (x < g->alf[x]) {
                int a = mapping[x], b = mapping[g->alf[x]];
                keys[ne++] = a < b ? a : b;
            }
        return perm_parity_from_keys(keys, ne);
    }
    int sign = 1;
    for (int x = 0; x < nd; x++) {
        int y = g->alf[x];
        if (x < y && mapping[x] > mapping[y]) sign = -sign;
    }
    int keys[MAXD];
    for (int t = 0; t < g->nblack; t++)
        keys[t] = black_min_mapped(g, g->border[t], mapping);
    return sign * perm_parity_from_keys(keys, g->nblack);
}

/* canonical key: nd then alpha, sig, vcol, blab blocks in BFS numbering */
typedef struct {
    int len;                   /* bytes in data */
    uint8_t data[1 + 4 * MAXD];
} Key;

/* returns sign in {-1,0,1}; fills key and (optionally) the canonical graph */
static int canonical(const Graph *g, int dpar, Key *key, Graph *can) {
    int nd = g->nd;
    uint8_t head_inv[MAXD];
    int m0 = 3;
    for (int r = 0; r < nd; r++) {
        head_inv[r] = (g->sig[r] == r || g->sig[r] == g->alf[r]) ? 1 : 2;
        if (head_inv[r] < m0) m0 = head_inv[r];
    }
    uint8_t mapping[MAXD], order[MAXD];
    uint8_t best[4 * MAXD];
    uint8_t bestmaps[MAXMAP][MAXD];
    int nbest = 0, have = 0;
    uint8_t enc[4 * MAXD];
    for (int root = 0; root < nd; root++) {
        if (head_inv[root] != m0) continue;
        bfs_order(g, root, mapping, order);
        int stop = 0, ahead = 0;
        for (int i = 0; i < nd; i++) {
            enc[i] = mapping[g->alf[order[i]]];
            if (have && !ahead) {
                if (enc[i] > best[i]) { stop = 1; break; }
                if (enc[i] < best[i]) ahead = 1;
            }
        }
        if (stop) continue;
        for (int i = 0; i < nd; i++) {
            enc[nd + i] = mapping[g->sig[order[i]]];
            enc[2 * nd + i] = g->vcol[order[i]];
            enc[3 * nd + i] = g->blab[order[i]];
        }
        int cmp = have ? memcmp(enc, best, 4 * nd) : -1;
        if (cmp < 0) {
            memcpy(best, enc, 4 * nd);
            memcpy(bestmaps[0], mapping, nd);
            nbest = 1;
            have = 1;
        } else if (cmp == 0) {
            if (nbest < MAXMAP) memcpy(bestmaps[nbest], mapping, nd);
            nbest++;
            if (nbest > MAXMAP) die("too many automorphisms");
        }
    }
    int sign0 = relabel_sign(g, bestmaps[0], dpar);
    for (int t = 1; t < nbest; t++)
        if (relabel_sign(g, bestmaps[t], dpar) != sign0)
            return 0;
    key->len = 1 + 4 * nd;
    key->data[0] = (uint8_t)nd;
    memcpy(key->data + 1, best, 4 * nd);
    if (can) {
        /* the canonical graph is read off the encoding directly */
        can->nd = nd;
        int nb = 0;
        uint8_t seen[MAXD];
        memset(seen, 0, nd);
        for (int i = 0; i < nd; i++) {
            can->alf[i] = best[i];
            can->sig[i] = best[nd + i];
            can->vcol[i] = best[2 * nd + i];
            can->blab[i] = best[3 * nd + i];
        }
        /* black list order: ascending min dart (canonical normalization) */
        for (int i = 0; i < nd; i++) {
            if (seen[i]) continue;
            int x = i, isb = (can->vcol[i] == 0);
            do { seen[x] = 1; x = can->sig[x]; } while (x != i);
            if (isb) can->border[nb++] = (uint8_t)i;
        }
        can->nblack = nb;
    }
    return sign0;
}

/* ---------------- boundary relabeling of raw graphs ---------------- */

/* Recompute blab for a raw graph whose old darts carry labels in oldlab
 * (0xff for the new darts).  Each cycle of sig(alf(.)) must meet exactly
 * one old label, except the cycle meeting darts labeled `merge_to` which
 * also absorbs the unlabeled new darts.  Returns 0 on tracking failure. */
static int assign_boundaries(Graph *g, const uint8_t *oldlab) {
    int nd = g->nd;
    uint8_t seen[MAXD];
    memset(seen, 0, nd);
    int used[MAXD];
    memset(used, 0, sizeof(int) * (nd + 1));
    int ncyc = 0;
    for (int s = 0; s < nd; s++) {
        if (seen[s]) continue;
        int lab = -1, x = s;
        do {
            seen[x] = 1;
            if (oldlab[x] != 0xff) {
                if (lab == -1) lab = oldlab[x];
                else if (lab != (int)oldlab[x]) return 0;
            }
            x = g->sig[g->alf[x]];
        } while (x != s);
        if (lab == -1) return 0;
        used[lab]++;
        ncyc++;
        x = s;
        do { g->blab[x] = (uint8_t)lab; x = g->sig[g->alf[x]]; } while (x != s);
    }
    for (int l = 1; l <= ncyc; l++)
        if (used[l] != 1) return 0;
    return 1;
}

/* ---------------- term accumulation ---------------- */

typedef struct {
    Key key;        /* canonical key of the term */
    Graph can;      /* canonical graph (for the outer layer) */
    int32_t coeff;  /* in half units */
} Term;

typedef struct {
    Term *items;
    int n, cap;
} TermList;

static void termlist_add(TermList *tl, const Key *key, const Graph *can,
                         int32_t coeff) {
    for (int i = 0; i < tl->n; i++)
        if (tl->items[i].key.len == key->len &&
            !memcmp(tl->items[i].key.data, key->data, key->len)) {
            tl->items[i].coeff += coeff;
            return;
        }
    if (tl->n == tl->cap) {
        tl->cap = tl->cap ? tl->cap * 2 : 64;
        tl->items = realloc(tl->items, sizeof(Term) * tl->cap);
        if (!tl->items) die("out of memory");
    }
    tl->items[tl->n].key = *key;
    tl->items[tl->n].can = *can;
    tl->items[tl->n].coeff = coeff;
    tl->n++;
}

static void termlist_compact(TermList *tl) {
    int w = 0;
    for (int i = 0; i < tl->n; i++)
        if (tl->items[i].coeff) tl->items[w++] = tl->items[i];
    tl->n = w;
}

static void add_raw(TermList *out, const Graph *raw, int dpar, int32_t coeff) {
    Key key;
    Graph can;
    int sign = canonical(raw, dpar, &key, &can);
    if (!sign) return;
    termlist_add(out, &key, &can, sign * coeff);
}

/* ---------------- the three differential terms ---------------- */

/* sgn = (-1)^{|G|}: parity E for d even, parity n_black for d odd */
static int degree_sign(const Graph *g, int dpar) {
    int par = dpar ? (g->nblack & 1) : ((g->nd / 2) & 1);
    return par ? -1 : 1;
}

/* term 1: attach a black leaf in every boundary corner.
 * Python raw numbering: new darts 0 (at the host corner) and 1 (new black
 * leaf), old darts shifted by 2; the new black is first in list order. */
static void delta_attach(const Graph *g, int dpar, TermList *out) {
    int nd = g->nd;
    Graph raw;
    for (int b = 0; b < nd; b++) {
        int a = g->alf[b];     /* corner anchor: insert after alpha(b) */
        raw.nd = nd + 2;
        raw.alf[0] = 1; raw.alf[1] = 0;
        for (int x = 0; x < nd; x++) raw.alf[x + 2] = (uint8_t)(g->alf[x] + 2);
        for (int x = 0; x < nd; x++) raw.sig[x + 2] = (uint8_t)(g->sig[x] + 2);
        raw.sig[1] = 1;                        /* univalent black leaf */
        raw.sig[0] = (uint8_t)(g->sig[a] + 2); /* splice 0 after anchor */
        raw.sig[a + 2] = 0;
        raw.vcol[0] = g->vcol[a];
        raw.vcol[1] = 0;
        for (int x = 0; x < nd; x++) raw.vcol[x + 2] = g->vcol[x];
        raw.nblack = g->nblack + 1;
        raw.border[0] = 1;
        for (int t = 0; t < g->nblack; t++)
            raw.border[t + 1] = (uint8_t)(g->border[t] + 2);
        uint8_t oldlab[MAXD];
        oldlab[0] = oldlab[1] = g->blab[b]; /* merged boundary keeps label */
        for (int x = 0; x < nd; x++) oldlab[x + 2] = g->blab[x];
        if (!assign_boundaries(&raw, oldlab)) die("boundary tracking (attach)");
        add_raw(out, &raw, dpar, 2);
    }
}

/* rotation of the vertex owning dart v0, starting at its minimal dart */
static int vertex_rotation(const Graph *g, int v0, uint8_t *rot) {
    int mn = v0, x = v0;
    do { if (x < mn) mn = x; x = g->sig[x]; } while (x != v0);
    int p = 0;
    x = mn;
    do { rot[p++] = (uint8_t)x; x = g->sig[x]; } while (x != mn);
    return p;
}

/* Python _placements for q = 2 corners: reference dart hd[0] lands in
 * corner t, the rest follow with non-decreasing offsets in {0,1,2} where
 * offset 2 means corner t placed before the reference dart.  content0 goes
 * after the corner-0 anchor, content1 after the corner-1 anchor. */
typedef void (*placement_cb)(const uint8_t *c0, int n0,
                             const uint8_t *c1, int n1, void *ctx);

static void placements_q2(const uint8_t *hd, int p, placement_cb cb, void *ctx) {
    uint8_t c0[MAXD], c1[MAXD];
    if (p == 0) { cb(c0, 0, c1, 0, ctx); return; }
    for (int t = 0; t < 2; t++) {
        /* offs = [0]*a + [1]*b + [2]*c with a+b+c = p-1 */
        for (int a = 0; a <= p - 1; a++)
            for (int b = 0; a + b <= p - 1; b++) {
                int c = p - 1 - a - b;
                int n0 = 0, n1 = 0;
                uint8_t before[MAXD];
                int nb = 0;
                /* darts hd[1..]: first a land at corner (t+0)%2 after ref,
                 * next b at corner (t+1)%2, last c before ref at corner t */
                uint8_t tail0[MAXD], tail1[MAXD];
                int nt0 = 0, nt1 = 0;
                for (int i = 1; i <= a; i++) {
                    if (t == 0) tail0[nt0++] = hd[i]; else tail1[nt1++] = hd[i];
                }
                for (int i = a + 1; i <= a + b; i++) {
                    if (t == 0) tail1[nt1++] = hd[i]; else tail0[nt0++] = hd[i];
                }
                for (int i = a + b + 1; i <= a + b + c; i++)
                    before[nb++] = hd[i];
                /* corner t content: before + ref + tail_t */
                if (t == 0) {
                    for (int i = 0; i < nb; i++) c0[n0++] = before[i];
                    c0[n0++] = hd[0];
                    for (int i = 0; i < nt0; i++) c0[n0++] = tail0[i];
                    for (int i = 0; i < nt1; i++) c1[n1++] = tail1[i];
                } else {
                    for (int i = 0; i < nb; i++) c1[n1++] = before[i];
                    c1[n1++] = hd[0];
                    for (int i = 0; i < nt1; i++) c1[n1++] = tail1[i];
                    for (int i = 0; i < nt0; i++) c0[n0++] = tail0[i];
                }
                cb(c0, n0, c1, n1, ctx);
            }
    }
}

typedef struct {
    const Graph *g;
    int dpar;
    TermList *out;
    int32_t coeff;
    int white_label;       /* >0: white split of this label; 0: black split */
    const uint8_t *hd;
    int p;
} SplitCtx;

/* corner 0 anchors after dart nd+1, corner 1 after dart nd (both new).
 * White split: vertex nd is the new white (same label), nd+1 the black
 * leaf.  Black split: nd and nd+1 are the two new blacks, appended to the
 * black order as (vertex of nd, vertex of nd+1). */
static void split_emit(const uint8_t *c0, int n0, const uint8_t *c1, int n1,
                       void *vctx) {
    SplitCtx *ctx = vctx;
    const Graph *g = ctx->g;
    int nd = g->nd;
    Graph raw;
    raw.nd = nd + 2;
    for (int x = 0; x < nd; x++) {
        raw.alf[x] = g->alf[x];
        raw.sig[x] = g->sig[x];
        raw.vcol[x] = g->vcol[x];
    }
    raw.alf[nd] = (uint8_t)(nd + 1);
    raw.alf[nd + 1] = (uint8_t)nd;
    /* rebuild the two rotations: [nd] + c1 and [nd+1] + c0 */
    {
        uint8_t cyc[MAXD];
        int L = 0;
        cyc[L++] = (uint8_t)nd;
        for (int i = 0; i < n1; i++) cyc[L++] = c1[i];
        for (int i = 0; i < L; i++) raw.sig[cyc[i]] = cyc[(i + 1) % L];
        L = 0;
        cyc[L++] = (uint8_t)(nd + 1);
        for (int i = 0; i < n0; i++) cyc[L++] = c0[i];
        for (int i = 0; i < L; i++) raw.sig[cyc[i]] = cyc[(i + 1) % L];
    }
    if (ctx->white_label > 0) {
        raw.vcol[nd] = (uint8_t)ctx->white_label;
        raw.vcol[nd + 1] = 0;
        for (int i = 0; i < n0; i++) raw.vcol[c0[i]] = 0;
        for (int i = 0; i < n1; i++) raw.vcol[c1[i]] = (uint8_t)ctx->white_label;
        raw.nblack = g->nblack + 1;
        for (int t = 0; t < g->nblack; t++) raw.border[t] = g->border[t];
        raw.border[g->nblack] = (uint8_t)(nd + 1);
    } else {
        raw.vcol[nd] = 0;
        raw.vcol[nd + 1] = 0;
        for (int i = 0; i < n0; i++) raw.vcol[c0[i]] = 0;
        for (int i = 0; i < n1; i++) raw.vcol[c1[i]] = 0;
        /* host blacks minus the split vertex, then vertex(nd), vertex(nd+1) */
        int nb = 0;
        for (int t = 0; t < g->nblack; t++) {
            int rep = g->border[t];
            int in_split = 0;
            for (int i = 0; i < ctx->p; i++)
                if (ctx->hd[i] == rep) { in_split = 1; break; }
            if (!in_split) raw.border[nb++] = g->border[t];
        }
        raw.border[nb++] = (uint8_t)nd;
        raw.border[nb++] = (uint8_t)(nd + 1);
        raw.nblack = nb;
    }
    uint8_t oldlab[MAXD];
    for (int x = 0; x < nd; x++) oldlab[x] = g->blab[x];
    oldlab[nd] = oldlab[nd + 1] = 0xff;
    if (!assign_boundaries(&raw, oldlab)) die("boundary tracking (split)");
    add_raw(ctx->out, &raw, ctx->dpar, ctx->coeff);
}

static void delta_split_white(const Graph *g, int dpar, TermList *out) {
    int sgn = degree_sign(g, dpar);
    int nd = g->nd;
    uint8_t seen[MAXD], rot[MAXD];
    memset(seen, 0, nd);
    for (int s = 0; s < nd; s++) {
        if (seen[s] || g->vcol[s] == 0) { seen[s] = 1; continue; }
        int x = s;
        do { seen[x] = 1; x = g->sig[x]; } while (x != s);
        int p = vertex_rotation(g, s, rot);
        SplitCtx ctx = {g, dpar, out, (int32_t)(-sgn * 2),
                        g->vcol[s], rot, p};
        placements_q2(rot, p, split_emit, &ctx);
    }
}

static void delta_split_black(const Graph *g, int dpar, TermList *out) {
    int sgn = degree_sign(g, dpar);
    uint8_t rot[MAXD];
    for (int pos = 0; pos < g->nblack; pos++) {
        int p = vertex_rotation(g, g->border[pos], rot);
        int32_t f = -sgn;   /* half units: -sgn * 1/2 * 2 */
        if (dpar && ((pos + g->nblack) % 2 == 0)) f = -f;
        SplitCtx ctx = {g, dpar, out, f, 0, rot, p};
        placements_q2(rot, p, split_emit, &ctx);
    }
}

static void twist_differential(const Graph *g, int dpar, TermList *out) {
    out->n = 0;
    delta_attach(g, dpar, out);
    delta_split_white(g, dpar, out);
    delta_split_black(g, dpar, out);
    termlist_compact(out);
}

/* ---------------- hashing and the inner cache ---------------- */

static uint64_t hash_key(const Key *k) {
    uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < k->len; i++) {
        h ^= k->data[i];
        h *= 1099511628211ULL;
    }
    h ^= h >> 33; h *= 0xff51afd7ed558ccdULL; h ^= h >> 33;
    return h ? h : 1;
}

/* inner cache: canonical key -> list of (term hash, coeff) */
typedef struct { uint64_t h; int32_t c; } HTerm;

typedef struct CacheEntry {
    uint64_t h;
    uint32_t off;      /* offset into the hterm arena */
    uint32_t n;
    struct CacheEntry *next;
} CacheEntry;

#define CACHE_BUCKETS (1u << 20)
static CacheEntry **cache_tab;
static HTerm *harena;
static size_t harena_n, harena_cap;
static CacheEntry *earena;
static size_t earena_n, earena_cap;

static void cache_reset(void) {
    if (!cache_tab) cache_tab = calloc(CACHE_BUCKETS, sizeof(CacheEntry *));
    else memset(cache_tab, 0, CACHE_BUCKETS * sizeof(CacheEntry *));
    harena_n = 0;
    earena_n = 0;
}

static CacheEntry *cache_find(uint64_t h) {
    for (CacheEntry *e = cache_tab[h & (CACHE_BUCKETS - 1)]; e; e = e->next)
        if (e->h == h) return e;
    return NULL;
}

static CacheEntry *cache_insert(uint64_t h, const TermList *tl) {
    if (earena_n == earena_cap) {
        earena_cap = earena_cap ? earena_cap * 2 : (1 << 16);
        earena = realloc(earena, earena_cap * sizeof(CacheEntry));
        if (!earena) die("out of memory");
        /* NOTE: realloc moves entries; the hash table holds pointers, so
         * rebuild the chains from scratch */
        memset(cache_tab, 0, CACHE_BUCKETS * sizeof(CacheEntry *));
        for (size_t i = 0; i < earena_n; i++) {
            CacheEntry *e = &earena[i];
            uint32_t b = e->h & (CACHE_BUCKETS - 1);
            e->next = cache_tab[b];
            cache_tab[b] = e;
        }
    }
    if (harena_n + tl->n > harena_cap) {
        while (harena_n + tl->n > harena_cap)
            harena_cap = harena_cap ? harena_cap * 2 : (1 << 18);
        harena = realloc(harena, harena_cap * sizeof(HTerm));
        if (!harena) die("out of memory");
    }
    CacheEntry *e = &earena[earena_n++];
    e->h = h;
    e->off = (uint32_t)harena_n;
    e->n = (uint32_t)tl->n;
    for (int i = 0; i < tl->n; i++) {
        harena[harena_n].h = hash_key(&tl->items[i].key);
        harena[harena_n].c = tl->items[i].coeff;
        harena_n++;
    }
    uint32_t b = h & (CACHE_BUCKETS - 1);
    e->next = cache_tab[b];
    cache_tab[b] = e;
    return e;
}

/* ---------------- per-rep accumulator ---------------- */

#define ACC_BITS 18
#define ACC_SIZE (1u << ACC_BITS)
static uint64_t acc_h[ACC_SIZE];
static int64_t acc_v[ACC_SIZE];
static uint32_t acc_touched[ACC_SIZE];
static uint32_t acc_ntouched;

static void acc_add(uint64_t h, int64_t v) {
    uint32_t i = (uint32_t)(h & (ACC_SIZE - 1));
    for (;;) {
        if (acc_h[i] == h) { acc_v[i] += v; return; }
        if (acc_h[i] == 0) {
            acc_h[i] = h;
            acc_v[i] = v;
            acc_touched[acc_ntouched++] = i;
            return;
        }
        i = (i + 1) & (ACC_SIZE - 1);
    }
}

static int acc_flush_zero(void) {
    int ok = 1;
    for (uint32_t t = 0; t < acc_ntouched; t++) {
        uint32_t i = acc_touched[t];
        if (acc_v[i] != 0) ok = 0;
        acc_h[i] = 0;
        acc_v[i] = 0;
    }
    acc_ntouched = 0;
    return ok;
}

/* ---------------- driver ---------------- */

static int read_graph(FILE *f, Graph *g, char kind) {
    int nd;
    if (fscanf(f, "%d", &nd) != 1) die("bad graph line");
    if (nd < 2 || nd > MAXD - 4) die("dart count out of range");
    g->nd = nd;
    int v;
    for (int i = 0; i < nd; i++) { if (fscanf(f, "%d", &v) != 1) die("bad alpha"); g->alf[i] = (uint8_t)v; }
    for (int i = 0; i < nd; i++) { if (fscanf(f, "%d", &v) != 1) die("bad sigma"); g->sig[i] = (uint8_t)v; }
    for (int i = 0; i < nd; i++) { if (fscanf(f, "%d", &v) != 1) die("bad vcol"); g->vcol[i] = (uint8_t)v; }
    for (int i = 0; i < nd; i++) { if (fscanf(f, "%d", &v) != 1) die("bad blab"); g->blab[i] = (uint8_t)v; }
    /* black list order for canonical inputs: ascending min dart */
    uint8_t seen[MAXD];
    memset(seen, 0, nd);
    g->nblack = 0;
    for (int i = 0; i < nd; i++) {
        if (seen[i]) continue;
        int x = i;
        do { seen[x] = 1; x = g->sig[x]; } while (x != i);
        if (g->vcol[i] == 0) g->border[g->nblack++] = (uint8_t)i;
    }
    (void)kind;
    return 1;
}

int main(int argc, char **argv) {
    if (argc != 3) die("usage: delta2 (sweep|delta) DPAR");
    int mode_sweep = !strcmp(argv[1], "sweep");
    int mode_delta = !strcmp(argv[1], "delta");
    if (!mode_sweep && !mode_delta) die("unknown mode");
    int dpar = atoi(argv[2]) & 1;

    TermList outer = {0}, inner = {0};
    long checked = 0, failures = 0;
    char tok[16];
    cache_reset();
    while (fscanf(stdin, "%15s", tok) == 1) {
        if (tok[0] == 'S') {           /* slice boundary: reset the cache */
            cache_reset();
            continue;
        }
        if (tok[0] != 'G') die("bad token");
        Graph g;
        read_graph(stdin, &g, 'G');
        twist_differential(&g, dpar, &outer);
        if (mode_delta) {
            printf("D %d\n", outer.n);
            for (int i = 0; i < outer.n; i++) {
                printf("%d ", outer.items[i].coeff);
                for (int b = 0; b < outer.items[i].key.len; b++)
                    printf("%02x", outer.items[i].key.data[b]);
                printf("\n");
            }
            continue;
        }
        for (int i = 0; i < outer.n; i++) {
            Term *t = &outer.items[i];
            uint64_t h = hash_key(&t->key);
            CacheEntry *e = cache_find(h);
            if (!e) {
                twist_differential(&t->can, dpar, &inner);
                e = cache_insert(h, &inner);
            }
            for (uint32_t j = 0; j < e->n; j++)
                acc_add(harena[e->off + j].h,
                        (int64_t)harena[e->off + j].c * t->coeff);
        }
        checked++;
        if (!acc_flush_zero()) {
            failures++;
            fprintf(stderr, "delta^2 != 0 on input graph %ld\n", checked);
        }
    }
    if (mode_sweep)
        printf("CHECKED %ld FAIL %ld\n", checked, failures);
    return failures ? 2 : 0;
}
