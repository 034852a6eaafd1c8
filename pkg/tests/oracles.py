"""Slow reference implementations used as test oracles.

Plain Python loops written directly from the formulas, deliberately
sharing no code with the package.
"""

import math


def class_groups(labels):
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return list(groups.values())


def memberships(X, labels, subset):
    """u[k][i] for fuzzifier 2, crisp on zero distance."""
    classes = class_groups(labels)
    cents = [[sum(X[k][a] for k in g) / len(g) for a in subset] for g in classes]
    U = []
    for row in X:
        d = [math.sqrt(sum((row[a] - c[j]) ** 2 for j, a in enumerate(subset))) for c in cents]
        if len(d) == 1:
            U.append([1.0])
            continue
        zero = [i for i, v in enumerate(d) if v < 1e-12]
        if zero:
            U.append([1.0 if i == zero[0] else 0.0 for i in range(len(d))])
            continue
        U.append([1.0 / sum((d[i] / d[j]) ** 2 for j in range(len(d))) for i in range(len(d))])
    return U, classes


def gs(X, labels, subset):
    U, classes = memberships(X, labels, subset)
    n, c = len(X), len(classes)
    dic = sum(sum(U[k][i] for k in g) / len(g) for i, g in enumerate(classes)) / c
    if c == 1:
        return dic, 1.0, dic
    H = [-sum(u * math.log(u) for u in row if u > 0) for row in U]
    hmax = max(H)
    w = [h / hmax for h in H] if hmax >= 1e-12 else [0.0] * n
    total, pairs = 0.0, 0
    for i in range(c):
        for j in range(i + 1, c):
            total += c / n * sum(w[k] * min(U[k][i], U[k][j]) for k in range(n))
            pairs += 1
    dis = min(1.0, max(0.0, 1 - total / pairs))
    return dic, dis, dic * dis


def relation(X, subset, pi):
    n = len(X)
    R = [[1.0] * n for _ in range(n)]
    for a in subset:
        col = [row[a] for row in X]
        mean = sum(col) / n
        radius = math.sqrt(sum((v - mean) ** 2 for v in col) / n) / pi
        for x in range(n):
            for y in range(n):
                gap = abs(col[x] - col[y])
                r = 1 - gap if gap <= radius else 0.0
                R[x][y] = min(R[x][y], r)
    return R


def lc_from_relation(R, labels):
    n = len(R)
    return sum(
        sum(R[i][j] for j in range(n) if labels[j] == labels[i]) / sum(R[i])
        for i in range(n)
    ) / n


def gamma(X, labels, subset, beta, pi=1.0):
    if not subset:
        return 0.0
    g = gs(X, labels, subset)[2]
    lc = lc_from_relation(relation(X, subset, pi), labels)
    return beta * g + (1 - beta) * lc


def midranks(scores_row):
    """Rank 1 = highest score; tied scores share the mean of their positions."""
    out = []
    for v in scores_row:
        above = sum(1 for w in scores_row if w > v)
        equal = sum(1 for w in scores_row if w == v)
        out.append(above + (equal + 1) / 2)
    return out


def friedman(rank_rows):
    n, m = len(rank_rows), len(rank_rows[0])
    r = [sum(row[j] for row in rank_rows) / n for j in range(m)]
    chi2 = 12 * n / (m * (m + 1)) * (sum(x * x for x in r) - m * (m + 1) ** 2 / 4)
    denom = n * (m - 1) - chi2
    tau_f = None if abs(denom) < 1e-12 else (n - 1) * chi2 / denom
    return chi2, tau_f


def brute_greedy(X, labels, beta, pi, steps):
    """Forward selection by exhaustive argmax of gamma; ties -> lowest index
    among values within 1e-12 of the best."""
    M = len(X[0])
    reduct, order = [], []
    for _ in range(min(steps, M)):
        vals = {a: gamma(X, labels, reduct + [a], beta, pi) for a in range(M) if a not in reduct}
        top = max(vals.values())
        a = min(a for a, v in vals.items() if v >= top - 1e-12)
        reduct.append(a)
        order.append((a, vals))
    return order
