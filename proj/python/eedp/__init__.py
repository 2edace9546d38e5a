"""EEDP graph flattening and the edge-prediction benchmark (C++ core)."""

from ._core import (
    FormatError,
    Graph,
    GraphError,
    all_simple_paths,
    build_eedp_dag,
    compress,
    count_tokens,
    expand,
    extract_paths,
    flatten,
    generate_merged_like,
    grade_dp,
    graphml_schema_violations,
    load_tu_dataset,
    method_label,
    methods,
    parse_adjacency_list,
    parse_answer,
    parse_edge_list,
    parse_gml,
    parse_graphml,
    parse_natural_language,
    reachable,
    read_graph_file,
    sample_cases,
    shortest_distance,
    simple_path_of_length_exists,
    write_graph_list,
)

__version__ = "0.1.0"
