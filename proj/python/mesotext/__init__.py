"""Mesoscopic text networks.

Texts become graphs whose nodes are overlapping windows of consecutive
paragraphs, linked when their tf-idf vectors are similar.
"""

from ._core import (
    Graph,
    MesoscopicNetwork,
    OrganizedText,
    TextClass,
    WeightedSimilarityGraph,
    adjusted_rand_index,
    analyze,
    build,
    clustering_accuracy,
    clustering_coefficient,
    coefficient_of_variation,
    cooccurrence,
    cooccurrence_summary,
    cooccurrence_summary_names,
    export_svg,
    feature_names,
    fr_layout,
    kmeans,
    letter_tokens,
    load_lemmas,
    load_stopwords,
    matching_index,
    network_features,
    organize,
    pca,
    report,
    segment_paragraphs,
    shuffle_paragraphs,
    shuffle_words,
    spearman,
    text_to_network,
    windowed_cv,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
