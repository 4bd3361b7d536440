"""
Which journals cannot be told apart?
====================================

Kruskal-Wallis first, then Dunn's pairwise test at the Bonferroni
level. Pairs that do NOT differ are linked, and the k-cores of that
graph are the most homogeneous groups.
"""

from i3kit import make_corpus
from i3kit.report import journal_citations
from i3kit.simgraph import build_graph, core_numbers, export_pajek, kamada_kawai_layout, layout_to_csv
from i3kit.stats import dunn_pairwise, kruskal_wallis
from i3kit.synthetic import random_corpus

corpus = make_corpus(random_corpus(4000, n_journals=15, seed=3))
groups = journal_citations(corpus)
labels = list(groups)
samples = [groups[j] for j in labels]

kw = kruskal_wallis(samples)
print(f"H = {kw.statistic:.2f}, df = {kw.df}, p = {kw.p_value:.3g}")

pw = dunn_pairwise(samples, family_alpha=0.05, labels=labels)
print(f"{len(labels) * (len(labels) - 1) // 2} comparisons at alpha = {pw.per_comparison_alpha:.6f}")

###############################################################################
# Graph and cores

graph = build_graph(pw)
cores = core_numbers(graph)
top = max(cores.values())
print(f"{len(graph.edges)} links; the {top}-core holds", sorted(v for v, c in cores.items() if c == top))

###############################################################################
# Files for Pajek or any plotting tool

print(export_pajek(graph))
print(layout_to_csv(kamada_kawai_layout(graph, seed=0), graph.nodes))
