"""Exact computations with glider representations of filtered algebras."""
from importlib import resources

from .exactlin import QQ, Field, Mat, Subspace
from .filtalg import (INF, Algebra, Bialgebra, Companion, Filtration, companion, degree_filtration,
                      group_algebra, one_step_filtration)
from .glider import GliderMor, glider_mor, is_glider, is_preglider, is_prefragment
from .repmod import Rep, RepMor, hom_space, standard_projective

__version__ = "0.1.0"


def data_file(name: str):
    """Path to a shipped fixture document."""
    return resources.files(__name__) / "data" / name


__all__ = ["QQ", "Field", "Mat", "Subspace", "INF", "Algebra", "Bialgebra", "Companion", "Filtration",
           "companion", "degree_filtration", "group_algebra", "one_step_filtration", "GliderMor",
           "glider_mor", "is_glider", "is_preglider", "is_prefragment", "Rep", "RepMor", "hom_space",
           "standard_projective", "data_file"]
