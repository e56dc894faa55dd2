"""
Axis-aligned regression trees grown by variance reduction.

Split candidates are the midpoints between adjacent distinct feature values
(thinned to at most ``max_bins - 1`` per feature), so split search reduces to
weighted histograms over integer bin codes. Ties between candidate splits
go to the lowest feature index, then the lowest threshold.
"""

from dataclasses import dataclass

import numpy as np

MAX_BINS = 256
MIN_GAIN = 1e-12


class Binner:
    """Maps raw feature values to bin codes consistent with split thresholds."""

    def __init__(self, X, max_bins=MAX_BINS):
        X = np.asarray(X, dtype=float)
        self.thresholds = []
        for j in range(X.shape[1]):
            u = np.unique(X[:, j])
            mids = (u[:-1] + u[1:]) / 2.0
            if mids.size > max_bins - 1:
                pick = np.linspace(0, mids.size - 1, max_bins - 1).round().astype(int)
                mids = np.unique(mids[pick])
            self.thresholds.append(mids)
        self.n_bins = max((t.size + 1 for t in self.thresholds), default=1)

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        codes = np.empty(X.shape, dtype=np.int64)
        for j, t in enumerate(self.thresholds):
            # code <= b  <=>  x <= thresholds[b]
            codes[:, j] = np.searchsorted(t, X[:, j], side="left")
        return codes


@dataclass
class Tree:
    """Flat array tree; ``feature == -1`` marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    # training statistics used for pruning (not persisted)
    weight: np.ndarray = None
    sse: np.ndarray = None

    @property
    def n_leaves(self):
        return int(np.sum(self.feature < 0))

    @property
    def depth(self):
        depth = np.zeros(self.feature.size, dtype=int)
        for i in range(self.feature.size):
            if self.feature[i] >= 0:
                depth[self.left[i]] = depth[self.right[i]] = depth[i] + 1
        return int(depth.max())

    def apply(self, X):
        """Leaf index reached by each row of ``X``."""
        X = np.asarray(X, dtype=float)
        node = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        while True:
            feat = self.feature[node]
            inner = feat >= 0
            if not inner.any():
                return node
            r, nd, f = rows[inner], node[inner], feat[inner]
            go_left = X[r, f] <= self.threshold[nd]
            node[r] = np.where(go_left, self.left[nd], self.right[nd])

    def predict(self, X):
        return self.value[self.apply(X)]

    def scaled(self, factor):
        return Tree(self.feature, self.threshold, self.left, self.right,
                    self.value * factor, self.weight, self.sse)

    def to_dict(self, names):
        return {
            "feature": [names[f] if f >= 0 else None for f in self.feature.tolist()],
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, data, names):
        index = {name: i for i, name in enumerate(names)}
        return cls(
            feature=np.array([-1 if f is None else index[f] for f in data["feature"]], dtype=np.int64),
            threshold=np.array(data["threshold"], dtype=float),
            left=np.array(data["left"], dtype=np.int64),
            right=np.array(data["right"], dtype=np.int64),
            value=np.array(data["value"], dtype=float),
        )


def _best_split(codes, y, w, n_bins, features, min_leaf):
    """Return ``(gain, feature, bin)`` of the best admissible split or None."""
    k = features.size
    sub = codes[:, features] + np.arange(k) * n_bins
    size = k * n_bins
    wy = w * y
    sw = np.bincount(sub.ravel(), weights=np.repeat(w, k), minlength=size).reshape(k, n_bins)
    sy = np.bincount(sub.ravel(), weights=np.repeat(wy, k), minlength=size).reshape(k, n_bins)
    wl = np.cumsum(sw, axis=1)[:, :-1]
    yl = np.cumsum(sy, axis=1)[:, :-1]
    total_w, total_y = w.sum(), wy.sum()
    wr = total_w - wl
    yr = total_y - yl
    ok = (wl >= min_leaf) & (wr >= min_leaf)
    if not ok.any():
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        gain = yl ** 2 / wl + yr ** 2 / wr - total_y ** 2 / total_w
    gain = np.where(ok, gain, -np.inf)
    flat = int(np.argmax(gain))
    best = gain.flat[flat]
    node_sse = float(np.dot(wy, y)) - total_y ** 2 / total_w
    if not best > MIN_GAIN * node_sse:
        return None
    fi, b = divmod(flat, n_bins - 1)
    return best, int(features[fi]), b


def grow_tree(X, y, binner=None, codes=None, weights=None, max_depth=8, min_leaf=2,
              max_features=None, rng=None):
    """
    Grow a regression tree on rows with positive weight.

    ``max_features`` < n_features draws a fresh random feature subset at every
    split from ``rng``. Leaves hold the weighted mean target.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if binner is None:
        binner = Binner(X)
    if codes is None:
        codes = binner.transform(X)
    w = np.ones(y.size) if weights is None else np.asarray(weights, dtype=float)
    p = X.shape[1]
    n_bins = binner.n_bins
    all_features = np.arange(p)
    subset = max_features is not None and max_features < p

    feature, threshold, left, right, value, weight, sse = [], [], [], [], [], [], []

    def new_node(idx):
        wi, yi = w[idx], y[idx]
        total = wi.sum()
        mean = float(np.dot(wi, yi) / total)
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(mean)
        weight.append(float(total))
        sse.append(float(np.dot(wi, (yi - mean) ** 2)))
        return len(feature) - 1

    root_idx = np.flatnonzero(w > 0)
    stack = [(new_node(root_idx), root_idx, 0)]
    while stack:
        node, idx, depth = stack.pop()
        if depth >= max_depth or sse[node] <= 0.0 or weight[node] < 2 * min_leaf:
            continue
        feats = np.sort(rng.choice(p, size=max_features, replace=False)) if subset else all_features
        found = _best_split(codes[idx], y[idx], w[idx], n_bins, feats, min_leaf)
        if found is None:
            continue
        _, f, b = found
        mask = codes[idx, f] <= b
        li, ri = idx[mask], idx[~mask]
        feature[node] = f
        threshold[node] = float(binner.thresholds[f][b])
        left[node] = new_node(li)
        right[node] = new_node(ri)
        # right pushed first so the left subtree is expanded first
        stack.append((right[node], ri, depth + 1))
        stack.append((left[node], li, depth + 1))

    return Tree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.array(value, dtype=float),
        weight=np.array(weight, dtype=float),
        sse=np.array(sse, dtype=float),
    )


# ---------------------------------------------------------------------------
# cost-complexity pruning


def _subtree_stats(tree, alive):
    """Leaf count and leaf SSE of every node's subtree under the ``alive`` mask."""
    n = tree.feature.size
    leaves = np.zeros(n, dtype=int)
    risk = np.zeros(n)
    for i in range(n - 1, -1, -1):  # children always have larger indices
        if tree.feature[i] < 0 or not alive[i]:
            leaves[i], risk[i] = 1, tree.sse[i]
        else:
            leaves[i] = leaves[tree.left[i]] + leaves[tree.right[i]]
            risk[i] = risk[tree.left[i]] + risk[tree.right[i]]
    return leaves, risk


def pruning_path(tree):
    """
    Weakest-link pruning sequence.

    Returns a list of ``(alpha, collapsed)`` pairs with increasing alpha where
    ``collapsed`` is a boolean mask of internal nodes turned into leaves in the
    optimal subtree for that alpha. The first entry has alpha 0.
    """
    internal = tree.feature >= 0
    alive = internal.copy()
    path = [(0.0, ~alive & internal)]
    while internal[0] and alive[0]:
        leaves, risk = _subtree_stats(tree, alive)
        reach = _reachable(tree, alive)
        cand = np.flatnonzero(alive & reach)
        g = (tree.sse[cand] - risk[cand]) / (leaves[cand] - 1)
        gmin = g.min()
        weakest = cand[g <= gmin + 1e-12 * max(1.0, abs(gmin))]
        alive[weakest] = False
        alpha = max(float(gmin), path[-1][0])
        path.append((alpha, ~alive & internal))
    return path


def _reachable(tree, alive):
    reach = np.zeros(tree.feature.size, dtype=bool)
    reach[0] = True
    for i in range(tree.feature.size):
        if reach[i] and tree.feature[i] >= 0 and alive[i]:
            reach[tree.left[i]] = reach[tree.right[i]] = True
    return reach


def collapse(tree, collapsed):
    """Copy of ``tree`` with the masked internal nodes turned into leaves, compacted."""
    keep = []
    remap = {}
    stack = [0]
    while stack:
        i = stack.pop()
        remap[i] = len(keep)
        keep.append(i)
        if tree.feature[i] >= 0 and not collapsed[i]:
            stack.append(tree.right[i])
            stack.append(tree.left[i])
    keep_arr = np.array(keep)
    feature = tree.feature[keep_arr].copy()
    left = np.full(keep_arr.size, -1, dtype=np.int64)
    right = np.full(keep_arr.size, -1, dtype=np.int64)
    for new, old in enumerate(keep):
        if feature[new] >= 0 and collapsed[old]:
            feature[new] = -1
        elif feature[new] >= 0:
            left[new], right[new] = remap[tree.left[old]], remap[tree.right[old]]
    threshold = np.where(feature >= 0, tree.threshold[keep_arr], 0.0)
    return Tree(feature, threshold, left, right, tree.value[keep_arr].copy(),
                tree.weight[keep_arr].copy(), tree.sse[keep_arr].copy())


def prune_to(tree, path, alpha):
    """Optimal subtree of ``tree`` for complexity parameter ``alpha``."""
    chosen = path[0][1]
    for a, mask in path:
        if a <= alpha:
            chosen = mask
        else:
            break
    return collapse(tree, chosen)


def cv_prune(X, y, rng, max_depth=8, min_leaf=2, folds=5):
    """
    Grow a full tree and prune it by the one-standard-error rule over
    ``folds``-fold cross-validation on the training rows.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = y.size
    binner = Binner(X)
    codes = binner.transform(X)
    full = grow_tree(X, y, binner, codes, max_depth=max_depth, min_leaf=min_leaf)
    path = pruning_path(full)
    if len(path) == 1 or n < 2 * folds:
        return collapse(full, path[0][1])
    alphas = np.array([a for a, _ in path])
    # geometric midpoints between consecutive alphas; last one open-ended
    probes = np.append(np.sqrt(alphas[:-1] * alphas[1:]), alphas[-1])
    fold_of = np.empty(n, dtype=int)
    fold_of[rng.permutation(n)] = np.arange(n) % folds
    sq_err = np.zeros((probes.size, n))
    for k in range(folds):
        test = fold_of == k
        weights = (~test).astype(float)
        tree_k = grow_tree(X, y, binner, codes, weights=weights,
                           max_depth=max_depth, min_leaf=min_leaf)
        path_k = pruning_path(tree_k)
        for j, a in enumerate(probes):
            pred = prune_to(tree_k, path_k, a).predict(X[test])
            sq_err[j, test] = (y[test] - pred) ** 2
    risk = sq_err.mean(axis=1)
    se = sq_err.std(axis=1, ddof=1) / np.sqrt(n)
    best = int(np.argmin(risk))
    limit = risk[best] + se[best]
    # simplest subtree (largest alpha) within one standard error
    pick = max(j for j in range(probes.size) if risk[j] <= limit)
    return collapse(full, path[pick][1])
