"""Homogeneity graphs: construction, k-cores, export and layout."""

from .export import export_dot, export_pajek, layout_to_csv, read_pajek
from .graph import HomogeneityGraph, build_graph, core_numbers, k_core
from .layout import Layout, kamada_kawai, kamada_kawai_layout, minimize_stress, stress

__all__ = [
    "HomogeneityGraph", "Layout", "build_graph", "core_numbers", "export_dot", "export_pajek",
    "k_core", "kamada_kawai", "kamada_kawai_layout", "layout_to_csv", "minimize_stress",
    "read_pajek", "stress",
]
