"""viscom: web page visual complexity metrics and a knowledge-gain
classification harness.

The library is organized around one module per concern:

    snapshot    bundle/session data model, loading, page-type rules
    dom         error-tolerant HTML parsing and the 31 HTML features
    vips        visual block segmentation and the 5 layout features
    visual      the 8 screenshot features
    aesthetics  14 layout aesthetics measures over 5 object classes
    textfeat    main-text extraction and the 32 textual features
    relevance   fact-relevance features over pluggable embeddings
    queries     the 11 session query features
    session     content filtering, aggregation, KG labels
    registry    governed feature naming and ordering
    ml          folds, classifiers, grid search, baselines, reports
    extract     whole-page extraction pipeline
    cli         command-line interface
"""

__version__ = "0.1.0"
