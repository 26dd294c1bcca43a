"""readlab: readability assessment from handcrafted linguistic features.

Extracts a 255-feature catalog from pre-annotated documents, trains topic
models for the semantic richness/clarity/noise measures, and evaluates
classifiers that can blend the handcrafted features with externally produced
neural soft labels.
"""

__version__ = "0.1.0"
