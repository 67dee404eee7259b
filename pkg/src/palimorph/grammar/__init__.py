from .model import FeatureSet, IrregularEntry, Morph, Morpheme, Paradigm
from .store import ExactHit, ParadigmStore, load_irregulars, load_paradigm

__all__ = [
    "ExactHit",
    "FeatureSet",
    "IrregularEntry",
    "Morph",
    "Morpheme",
    "Paradigm",
    "ParadigmStore",
    "load_irregulars",
    "load_paradigm",
]
