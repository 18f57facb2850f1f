#!/usr/bin/env python3
"""Regenerate the bundled demo corpus and its expected outputs.

Writes data/fixture/*.csv, then recomputes every expected result with an
independent reference stack (networkx plus exhaustive searches) and freezes
them under data/golden/ (byte-compared CSVs) and data/expected/expected.json
(value-compared with tolerances).

The golden CSVs follow the exact formats the `cocite` pipeline emits; run this
script only when the fixture itself is redesigned.
"""

import csv
import io
import itertools
import json
import math
import os
from collections import Counter, defaultdict

import networkx as nx

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)
FIXTURE = os.path.join(ROOT, "data", "fixture")
GOLDEN = os.path.join(ROOT, "data", "golden")
EXPECTED = os.path.join(ROOT, "data", "expected")
TAXONOMY = os.path.join(ROOT, "data", "taxonomy", "anzsrc_for.csv")

MIN_YEAR = 1962
S_MIN_WEIGHT = 2
F_MIN_WEIGHT = 5
K = 3
JENKS_CLASSES = 2


# ---------------------------------------------------------------- fixture ---

STUDIES = [
    # study_id, title, series_id, release_date, subject_terms, investigators, restricted
    ("st01", "Crime Reports 1990", "SER_CRIME", "1991-05-01", "crime;police;arrests", "Bureau of Records", 0),
    ("st02", "Crime Reports 1991", "SER_CRIME", "1992-05-01", "crime;police", "Bureau of Records", 0),
    ("st03", "Crime Reports 1992", "SER_CRIME", "1993-05-01", "crime;arrests", "Bureau of Records", 0),
    ("st04", "Election Panel 1988", "SER_ELECT", "1989-01-15", "elections;voting", "Survey Center", 0),
    ("st05", "Election Panel 1992", "SER_ELECT", "1993-01-15", "elections;candidates", "Survey Center", 0),
    ("st06", "Health Interviews 2000", "SER_HEALTH", "2001-06-30", "health", "Health Agency", 0),
    ("st07", "Neighborhood Survey 1995", "", "1996-03-10", "crime;surveys", "Doe;Roe", 0),
    ("st08", "Household Demographics 1994", "", "1995-07-22", "crime;demographics", "Census Office", 0),
    ("st09", "Voter Attitudes 1990", "", "1991-11-05", "voting", "Polling Group", 0),
    ("st10", "Rail Freight Ledgers 1900", "", "1999-02-01", "railroads;freight", "Archive Project", 0),
    ("st11", "Track Mileage Records 1905", "", "1999-02-01", "railroads;infrastructure", "Archive Project", 0),
    ("st12", "Shipping Manifests 1902", "", "2000-08-14", "railroads;freight", "Dockside Trust", 1),
    ("st13", "Time Use Diary 2003", "", "2004-04-04", "time use;daily life", "Usage Lab", 0),
    ("st14", "School Climate 2001", "", "2002-09-09", "education;schools", "Learning Institute", 0),
    ("st15", "Income Dynamics 1999", "", "2000-01-20", "income;employment", "Economics Shop", 0),
    ("st16", "Migration Histories 1980", "", "1981-12-12", "migration", "Population Unit", 0),
    ("st17", "Media Habits 2005", "", "2006-10-31", "media;attitudes", "Comms Dept", 0),
    ("st18", "Housing Stock 1970", "", "1971-05-05", "housing", "City Works", 0),
    ("st19", "Nutrition Recall 1998", "", "1999-03-03", "nutrition;health", "Diet Panel", 0),
    ("st20", "Transit Ridership 2002", "", "2003-06-06", "transit;cities", "City Works", 0),
]

# publication_id, year ('' = unknown), type, for_codes, cited studies
PUBLICATIONS = [
    ("P01", 1991, "journal-article", ["1602"], ["st01", "st07"]),
    ("P02", 1992, "journal-article", [], ["st02", "st07"]),
    ("P03", 1994, "report", [], ["st01", "st03", "st07"]),
    ("P04", 1995, "journal-article", [], ["st03", "st08"]),
    ("P05", 1996, "journal-article", [], ["st01", "st08"]),
    ("P06", 1997, "thesis", [], ["st07", "st08"]),
    ("P07", 1998, "journal-article", [], ["st07", "st08"]),
    ("P08", 1999, "journal-article", [], ["st08", "st09"]),
    ("P09", 2000, "book", [], ["st08", "st09"]),
    ("P10", 2001, "journal-article", ["1606"], ["st08", "st04"]),
    ("P11", 2002, "journal-article", [], ["st08", "st05"]),
    ("P12", 2003, "proceedings", [], ["st09", "st04"]),
    ("P13", 2004, "journal-article", ["1606", "1701"], ["st09", "st05", "st04"]),
    ("P14", 2005, "journal-article", [], ["st10", "st11"]),
    ("P15", 2006, "chapter", [], ["st10", "st11", "st12"]),
    ("P16", 2007, "journal-article", [], ["st10", "st12"]),
    ("P17", 2008, "journal-article", [], ["st11", "st12"]),
    ("P18", 2009, "journal-article", ["1103"], ["st06", "st19"]),
    ("P19", 2010, "report", [], ["st13", "st20"]),
    ("P20", 2011, "journal-article", [], ["st14", "st15"]),
    ("P21", 2012, "journal-article", [], ["st16", "st17"]),
    ("P22", 1962, "journal-article", [], ["st18"]),
    ("P23", 1980, "thesis", [], ["st18"]),
    ("P24", 1985, "journal-article", [], ["st01"]),
    ("P25", 1988, "journal-article", [], ["st04"]),
    ("P26", 1995, "report", [], ["st06"]),
    ("P27", 2005, "journal-article", [], ["st13"]),
    ("P28", 2007, "journal-article", [], ["st19"]),
    ("P29", 2009, "journal-article", [], ["st15"]),
    ("P30", 2011, "journal-article", [], ["st20"]),
    ("P31", 1950, "journal-article", [], ["st01", "st07"]),  # dropped by min_year
    ("P32", "", "journal-article", [], ["st16"]),            # unknown year, retained
    ("P33", 2013, "journal-article", ["1602", "1606", "1608"], ["st01"]),
    ("P34", 2013, "journal-article", ["1602", "1606", "1608"], ["st01"]),
    ("P35", 2014, "journal-article", ["1602", "1606", "1608"], ["st04"]),
    ("P36", 2014, "journal-article", ["1602", "1606", "1608"], ["st07"]),
    ("P37", 2015, "journal-article", ["1602", "1606", "1608"], ["st08"]),
    ("P38", 2015, "journal-article", ["1602", "1606"], ["st02"]),
    ("P39", 2016, "journal-article", ["0102", "0104", "1103"], ["st06"]),
    ("P40", 2016, "journal-article", ["0102", "0104", "1103"], ["st06"]),
    ("P41", 2017, "journal-article", ["0102", "0104", "1103"], ["st19"]),
    ("P42", 2017, "journal-article", ["0102", "0104", "1103"], ["st13"]),
    ("P43", 2018, "journal-article", ["0102", "0104", "1103"], ["st15"]),
    ("P44", 2018, "journal-article", ["0102", "0104"], ["st09"]),
    ("P45", 2019, "proceedings", ["1608", "0104"], ["st05"]),
    ("P46", 2019, "journal-article", ["1608", "0104"], ["st10"]),
    ("P47", 2020, "journal-article", ["1608", "0104"], ["st10"]),
    ("P48", 2020, "journal-article", ["1608", "0104"], ["st14"]),
    ("P49", 2021, "journal-article", ["1608", "0104"], ["st20"]),
    ("P50", 2021, "journal-article", ["1602", "0102"], ["st03"]),
    ("P51", 2021, "journal-article", ["1602", "0102"], ["st03"]),
    ("P52", 2019, "other", ["1904"], ["st17"]),
    ("P53", 2018, "journal-article", ["1302", "1303"], ["st14"]),
    ("P54", 2010, "journal-article", [], ["st15"]),
    ("P55", 2012, "report", [], ["st20"]),
    ("P56", 2014, "journal-article", [], ["st13"]),
    ("P57", 1975, "journal-article", [], ["st06"]),
    ("P58", 2016, "journal-article", [], ["st02"]),
    ("P59", 2018, "journal-article", [], ["st11"]),
    ("P60", 2020, "journal-article", [], ["st19"]),
]

DUPLICATE_ROWS = [("P06", "st07")]  # literal duplicate citation row


def fmt_field(s):
    s = str(s)
    if any(c in s for c in ',"\n\r'):
        return '"' + s.replace('"', '""') + '"'
    return s


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(fmt_field(c) for c in row) + "\n")


def fmt_num(v):
    if isinstance(v, float):
        return str(int(v)) if v.is_integer() else repr(v)
    return str(v)


def write_fixture():
    write_csv(
        os.path.join(FIXTURE, "studies.csv"),
        ["study_id", "title", "series_id", "release_date", "subject_terms", "investigators", "restricted"],
        STUDIES,
    )
    write_csv(
        os.path.join(FIXTURE, "publications.csv"),
        ["publication_id", "year", "type", "for_codes"],
        [(p, y, t, ";".join(codes)) for p, y, t, codes, _ in PUBLICATIONS],
    )
    link_rows = []
    for p, _, _, _, cited in PUBLICATIONS:
        for s in cited:
            link_rows.append((p, s))
    # splice the duplicate right after its original
    rows = []
    for r in link_rows:
        rows.append(r)
        if r in DUPLICATE_ROWS:
            rows.append(r)
            DUPLICATE_ROWS.remove(r)
    write_csv(os.path.join(FIXTURE, "citations.csv"), ["publication_id", "study_id"], rows)
    with open(os.path.join(FIXTURE, "fixture.cfg"), "w") as f:
        f.write(
            "# demo corpus configuration\n"
            "citations=citations.csv\n"
            "studies=studies.csv\n"
            "publications=publications.csv\n"
            "taxonomy=../taxonomy/anzsrc_for.csv\n"
            f"min_year={MIN_YEAR}\n"
            f"s_min_weight={S_MIN_WEIGHT}\n"
            f"f_min_weight={F_MIN_WEIGHT}\n"
            f"k={K}\n"
            "louvain_seed=1\n"
            f"jenks_classes={JENKS_CLASSES}\n"
            "layout_iterations=100\n"
            "layout_seed=7\n"
        )


# ------------------------------------------------------------ reference -----

def jenks_sse(prefix, prefix_sq, a, b):
    # SSE of sorted[a..b] inclusive, the shared formula
    n = b - a + 1
    s = prefix[b + 1] - prefix[a]
    ss = prefix_sq[b + 1] - prefix_sq[a]
    return max(0.0, ss - s * s / n)


def jenks_breaks(values, k):
    """Exhaustive natural-breaks over distinct values; lexicographically
    smallest cut tuple among right-folded-cost optima."""
    svals = sorted(values)
    distinct = sorted(set(svals))
    assert 1 <= k <= len(distinct)
    # run boundaries of each distinct value in the sorted full array
    start = {}
    end = {}
    for i, v in enumerate(svals):
        if v not in start:
            start[v] = i
        end[v] = i
    prefix = [0.0]
    prefix_sq = [0.0]
    for v in svals:
        prefix.append(prefix[-1] + v)
        prefix_sq.append(prefix_sq[-1] + v * v)

    d = len(distinct)
    best_cost = None
    best_cuts = None
    for cuts in itertools.combinations(range(1, d), k - 1):
        segs = []
        lo = 0
        for c in cuts:
            segs.append((lo, c - 1))
            lo = c
        segs.append((lo, d - 1))
        cost = 0.0
        for lo_d, hi_d in reversed(segs):  # right fold
            cost = jenks_sse(prefix, prefix_sq, start[distinct[lo_d]], end[distinct[hi_d]]) + cost
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_cuts = cuts
    boundaries = [distinct[c - 1] for c in best_cuts]  # class maxima, k-1 of them
    sst = jenks_sse(prefix, prefix_sq, 0, len(svals) - 1)
    gvf = 1.0 if sst == 0 else 1.0 - best_cost / sst
    return boundaries, gvf


def jenks_class(boundaries, v):
    for i, b in enumerate(boundaries):
        if v <= b:
            return i
    return len(boundaries)


def top_class(value_map, k):
    boundaries, _ = jenks_breaks(list(value_map.values()), k)
    return {n for n, v in value_map.items() if jenks_class(boundaries, v) == k - 1}


def canonical_communities(comms):
    comms = [sorted(c) for c in comms]
    comms.sort(key=lambda c: (-len(c), c))
    return comms


def main():
    write_fixture()

    # -- re-read the fixture the way an ingester would
    with open(os.path.join(FIXTURE, "studies.csv")) as f:
        studies = list(csv.DictReader(f))
    with open(os.path.join(FIXTURE, "publications.csv")) as f:
        pubs = list(csv.DictReader(f))
    with open(os.path.join(FIXTURE, "citations.csv")) as f:
        raw_links = [(r["publication_id"], r["study_id"]) for r in csv.DictReader(f)]
    with open(TAXONOMY) as f:
        taxonomy = {r["code"]: r for r in csv.DictReader(f)}

    links = []
    seen = set()
    dup = 0
    for l in raw_links:
        if l in seen:
            dup += 1
            continue
        seen.add(l)
        links.append(l)
    assert dup == 1

    year = {p["publication_id"]: (int(p["year"]) if p["year"] else None) for p in pubs}
    fields = {p["publication_id"]: [c for c in p["for_codes"].split(";") if c] for p in pubs}

    kept, dropped, unknown = [], 0, 0
    for pub, st in links:
        y = year[pub]
        if y is None:
            unknown += 1
            kept.append((pub, st))
        elif y >= MIN_YEAR:
            kept.append((pub, st))
        else:
            dropped += 1
    links = kept
    assert dropped == 2 and unknown == 1

    # datasets: group studies by series
    study_to_ds = {}
    ds_members = defaultdict(list)
    ds_kind = {}
    terms = defaultdict(Counter)
    for s in studies:
        ds = s["series_id"] or s["study_id"]
        study_to_ds[s["study_id"]] = ds
        ds_members[ds].append(s["study_id"])
        ds_kind[ds] = "series" if s["series_id"] else "standalone-study"
        for t in s["subject_terms"].split(";"):
            if t:
                terms[ds][t] += 1
    assert len(ds_members) == 17
    assert sum(1 for k_ in ds_kind.values() if k_ == "series") == 3

    # B: publications x datasets
    B = nx.Graph()
    b_edges = sorted({(pub, study_to_ds[st]) for pub, st in links})
    for pub, ds in b_edges:
        B.add_node(pub, bipartite=0)
        B.add_node(ds, bipartite=1)
        B.add_edge(pub, ds)
    left = sorted({e[0] for e in b_edges})
    right = sorted({e[1] for e in b_edges})

    # S: dataset co-citation projection (all right nodes kept pre-threshold)
    w = Counter()
    for pub in left:
        nbrs = sorted(B[pub])
        for a, b in itertools.combinations(nbrs, 2):
            w[(a, b)] += 1
    S_pre = nx.Graph()
    S_pre.add_nodes_from(right)
    for (a, b), ww in w.items():
        S_pre.add_edge(a, b, weight=ww)

    S = nx.Graph()
    for a, b, d in S_pre.edges(data=True):
        if d["weight"] >= S_MIN_WEIGHT:
            S.add_edge(a, b, weight=d["weight"])
    assert S.number_of_nodes() == 8 and S.number_of_edges() == 9

    # F: field co-citation, study level
    pub_studies = defaultdict(set)
    for pub, st in links:
        pub_studies[pub].add(st)
    fw = Counter()
    f_nodes = set()
    for p in sorted(fields):
        fl = sorted(set(fields[p]))
        f_nodes.update(fl)
        n_cited = len(pub_studies.get(p, ()))
        if len(fl) >= 2 and n_cited:
            for a, b in itertools.combinations(fl, 2):
                fw[(a, b)] += n_cited
    F_pre = nx.Graph()
    F_pre.add_nodes_from(sorted(f_nodes))
    for (a, b), ww in fw.items():
        F_pre.add_edge(a, b, weight=ww)
    F = nx.Graph()
    for a, b, d in F_pre.edges(data=True):
        if d["weight"] >= F_MIN_WEIGHT:
            F.add_edge(a, b, weight=d["weight"])
    assert sorted(F.nodes) == ["0102", "0104", "1103", "1602", "1606", "1608"]
    assert F.number_of_edges() == 7

    # -- metrics
    def graph_metrics(G, weighted=True):
        n, m = G.number_of_nodes(), G.number_of_edges()
        comps = nx.number_connected_components(G)
        out = {"nodes": n, "edges": m, "components": comps}
        out["density"] = nx.density(G) if n >= 2 else None
        tri_possible = any(d >= 2 for _, d in G.degree())
        out["transitivity"] = nx.transitivity(G) if tri_possible else None
        degs = [d for _, d in G.degree()]
        out["degree_assortativity"] = (
            nx.degree_assortativity_coefficient(G) if m >= 2 and len(set(degs)) > 1 else None
        )
        out["mean_degree"] = 2.0 * m / n if n else 0.0
        return out

    metrics = {
        "B": {
            "left_nodes": len(left),
            "right_nodes": len(right),
            "nodes": len(left) + len(right),
            "edges": B.number_of_edges(),
            "components": nx.number_connected_components(B),
            "density": B.number_of_edges() / (len(left) * len(right)),
            "density_union": nx.density(B),
        },
        "S_pre": graph_metrics(S_pre),
        "S": graph_metrics(S),
        "F_pre": graph_metrics(F_pre),
        "F": graph_metrics(F),
    }
    assert metrics["B"]["components"] == 7

    # -- betweenness on thresholded S (unweighted shortest paths, global norm)
    bet = nx.betweenness_centrality(S, normalized=True, weight=None)
    bet = {n: bet.get(n, 0.0) for n in S.nodes}
    assert abs(bet["st08"] - 4.0 / 21.0) < 1e-12

    degree_s = dict(S.degree())
    high_deg = top_class({n: float(d) for n, d in degree_s.items()}, JENKS_CLASSES)
    high_bet = top_class(bet, JENKS_CLASSES)
    high_both = high_deg & high_bet
    assert high_both == {"st08"}

    # -- k-clique percolation on S, cross-checked against brute force
    comms = canonical_communities([set(c) for c in nx.community.k_clique_communities(S, K)])

    def brute_percolation(G, k):
        nodes = sorted(G.nodes)
        kcliques = [
            set(c)
            for c in itertools.combinations(nodes, k)
            if all(G.has_edge(a, b) for a, b in itertools.combinations(c, 2))
        ]
        parent = list(range(len(kcliques)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in itertools.combinations(range(len(kcliques)), 2):
            if len(kcliques[i] & kcliques[j]) >= k - 1:
                parent[find(i)] = find(j)
        groups = defaultdict(set)
        for i, c in enumerate(kcliques):
            groups[find(i)] |= c
        return canonical_communities(groups.values())

    assert comms == brute_percolation(S, K)
    assert comms == [
        ["SER_CRIME", "st07", "st08"],
        ["SER_ELECT", "st08", "st09"],
        ["st10", "st11", "st12"],
    ]
    membership = defaultdict(list)
    for i, c in enumerate(comms):
        for n in c:
            membership[n].append(i)
    covered = set(membership)
    uncovered = sorted(set(S.nodes) - covered)

    # -- labels: three most frequent subject terms, ties alphabetical
    def label_of(members):
        agg = Counter()
        for ds in members:
            agg.update(terms[ds])
        ranked = sorted(agg.items(), key=lambda kv: (-kv[1], kv[0]))
        return ", ".join(t for t, _ in ranked[:3]) if ranked else "(unlabeled)"

    labels = [label_of(c) for c in comms]
    assert labels == [
        "crime, arrests, police",
        "elections, voting, candidates",
        "railroads, freight, infrastructure",
    ]

    multi = {n: len(m) for n, m in membership.items() if len(m) >= 2}
    assert multi == {"st08": 2}

    # -- subdivisions: component isolation + exclusivity ratio
    s_comps = [set(c) for c in nx.connected_components(S)]
    subdivisions = []
    for i, c in enumerate(comms):
        cs = set(c)
        internal = sum(d["weight"] for a, b, d in S.edges(data=True) if a in cs and b in cs)
        incident = sum(d["weight"] for a, b, d in S.edges(data=True) if a in cs or b in cs)
        ratio = internal / incident
        isolated = any(cs == comp for comp in s_comps)
        if isolated:
            assert ratio == 1.0
            subdivisions.append((i, ratio))
    assert [i for i, _ in subdivisions] == [2]

    crossroads = sorted(set(multi) | high_both)
    assert crossroads == ["st08"]

    # -- Louvain on F: exhaustive maximum-modularity partition (6 nodes)
    f_nodes_sorted = sorted(F.nodes)

    def partitions(seq):
        if not seq:
            yield []
            return
        first, rest = seq[0], seq[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    best_q, best_part = None, None
    for part in partitions(f_nodes_sorted):
        q = nx.community.modularity(F, [set(c) for c in part], weight="weight")
        if best_q is None or q > best_q + 1e-12:
            best_q, best_part = q, part
    best_part = canonical_communities(best_part)
    assert best_part == [["0102", "0104", "1103"], ["1602", "1606", "1608"]]
    nx_louvain = canonical_communities(nx.community.louvain_communities(F, weight="weight", seed=5))
    assert nx_louvain == best_part
    f_assignment = {}
    for i, c in enumerate(best_part):
        for n in c:
            f_assignment[n] = i

    # -- fields-of-research histogram over parent divisions (study level)
    div_of = {c: taxonomy[c]["parent_code"] for c in taxonomy}
    study_divs = defaultdict(set)
    study_cited = set()
    for pub, st in links:
        study_cited.add(st)
        for c in fields[pub]:
            study_divs[st].add(div_of[c])
    hist = Counter()
    untagged = 0
    for st in sorted(study_cited):
        k_ = len(study_divs.get(st, ()))
        if k_ == 0:
            untagged += 1
        else:
            hist[k_] += 1
    lam = sum(k_ * v for k_, v in hist.items()) / sum(hist.values())
    assert untagged == 4 and abs(lam - 1.875) < 1e-12

    # -- community spread of study-level datasets across F communities
    spread = Counter()
    for st in sorted(study_cited):
        cs = set()
        for pub, st2 in links:
            if st2 != st:
                continue
            for c in fields[pub]:
                if c in f_assignment:
                    cs.add(f_assignment[c])
        spread[len(cs)] += 1
    assert spread == Counter({1: 9, 2: 6, 0: 5})

    # -- core/periphery per F community by strength
    strength = {n: sum(d["weight"] for _, _, d in F.edges(n, data=True)) for n in F.nodes}
    core_periphery = {}
    for i, c in enumerate(best_part):
        vals = {n: float(strength[n]) for n in c}
        distinct = len(set(vals.values()))
        if len(c) < JENKS_CLASSES or distinct < JENKS_CLASSES:
            core_periphery[str(i)] = {"core": sorted(c), "periphery": []}
            continue
        boundaries, _ = jenks_breaks(list(vals.values()), JENKS_CLASSES)
        core = sorted(n for n, v in vals.items() if jenks_class(boundaries, v) == JENKS_CLASSES - 1)
        peri = sorted(n for n, v in vals.items() if jenks_class(boundaries, v) == 0)
        core_periphery[str(i)] = {"core": core, "periphery": peri}
    assert core_periphery == {
        "0": {"core": ["0104"], "periphery": ["0102", "1103"]},
        "1": {"core": ["1608"], "periphery": ["1602", "1606"]},
    }

    # -- citation counts per dataset (distinct publications in B)
    cites = {ds: B.degree(ds) for ds in right}
    boundaries, _ = jenks_breaks([float(v) for v in cites.values()], JENKS_CLASSES)
    top_cited = {ds for ds, v in cites.items() if jenks_class(boundaries, float(v)) == JENKS_CLASSES - 1}
    assert top_cited == {"SER_CRIME", "SER_ELECT", "st08"}

    # ---------------------------------------------------------- goldens ----
    def rows_to_csv(path, header, rows):
        with open(os.path.join(GOLDEN, path), "w", newline="") as f:
            f.write(",".join(header) + "\n")
            for row in rows:
                f.write(",".join(fmt_field(c) if isinstance(c, str) else fmt_num(c) for c in row) + "\n")

    rows_to_csv("b_edges.csv", ["left", "right"], b_edges)
    rows_to_csv(
        "s_pre_edges.csv",
        ["source", "target", "weight"],
        [(a, b, float(d["weight"])) for a, b, d in sorted(S_pre.edges(data=True))],
    )
    rows_to_csv(
        "s_edges.csv",
        ["source", "target", "weight"],
        [(a, b, float(d["weight"])) for a, b, d in sorted(S.edges(data=True))],
    )
    rows_to_csv(
        "f_edges.csv",
        ["source", "target", "weight"],
        [(a, b, float(d["weight"])) for a, b, d in sorted(F.edges(data=True))],
    )
    bprime = sorted({(p, c) for p in fields for c in set(fields[p])})
    rows_to_csv("bprime_edges.csv", ["left", "right"], bprime)
    rows_to_csv(
        "s_communities.csv",
        ["node", "community_index"],
        sorted(((n, i) for i, c in enumerate(comms) for n in c), key=lambda r: (r[1], r[0])),
    )
    rows_to_csv(
        "s_community_labels.csv",
        ["community_index", "size", "label"],
        [(i, len(c), labels[i]) for i, c in enumerate(comms)],
    )
    rows_to_csv("f_partition.csv", ["node", "community_index"], sorted(f_assignment.items()))
    rows_to_csv(
        "crossroads.csv",
        ["dataset", "membership_count", "degree", "in_high_both"],
        [(n, len(membership.get(n, [])), degree_s[n], 1 if n in high_both else 0) for n in crossroads],
    )
    rows_to_csv(
        "subdivisions.csv",
        ["community_index", "size", "label", "component_isolated", "exclusivity_ratio"],
        [(i, len(comms[i]), labels[i], 1, r) for i, r in subdivisions],
    )
    rows_to_csv(
        "histogram_divisions.csv",
        ["divisions", "datasets"],
        [(str(k_), hist[k_]) for k_ in sorted(hist)] + [("untagged", untagged)],
    )
    rows_to_csv("community_spread.csv", ["communities", "datasets"], sorted(spread.items()))
    rows_to_csv(
        "citation_counts.csv",
        ["dataset", "citations", "class", "is_top"],
        sorted(
            ((ds, v, jenks_class(boundaries, float(v)), 1 if ds in top_cited else 0) for ds, v in cites.items()),
            key=lambda r: (-r[1], r[0]),
        ),
    )

    expected = {
        "ingest": {
            "studies": len(studies),
            "publications": len(pubs),
            "citation_rows": len(raw_links),
            "duplicate_links": dup,
            "links": len(raw_links) - dup,
            "links_after_year_filter": len(links),
            "links_dropped_by_year": dropped,
            "links_year_unknown": unknown,
            "datasets": len(ds_members),
            "series": 3,
        },
        "metrics": metrics,
        "betweenness_s": bet,
        "degree_s": degree_s,
        "hubs": {
            "high_degree": sorted(high_deg),
            "high_betweenness": sorted(high_bet),
            "high_both": sorted(high_both),
        },
        "cover": {
            "communities": comms,
            "uncovered": uncovered,
            "covered_count": len(covered),
            "largest": max(len(c) for c in comms),
        },
        "labels": labels,
        "multi_membership": multi,
        "crossroads": crossroads,
        "subdivision_communities": [i for i, _ in subdivisions],
        "partition_f": {"assignment": f_assignment, "modularity": best_q, "communities": len(best_part)},
        "histogram": {"counts": {str(k_): v for k_, v in sorted(hist.items())}, "untagged": untagged, "lambda": lam},
        "spread": {str(k_): v for k_, v in sorted(spread.items())},
        "core_periphery": core_periphery,
        "citation_counts": cites,
        "top_cited": sorted(top_cited),
        "f_strength": strength,
    }
    with open(os.path.join(EXPECTED, "expected.json"), "w") as f:
        json.dump(expected, f, indent=2, sort_keys=True)
        f.write("\n")

    print("fixture + goldens regenerated")
    print("S:", metrics["S"])
    print("F:", metrics["F"])
    print("Q(F):", best_q)


if __name__ == "__main__":
    main()
