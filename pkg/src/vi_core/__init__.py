"""Variational mathematics: natural parameters, q*(θ), natural gradients, CAVI, ELBOs."""

from src.vi_core.association import AssociationPosterior, association_posterior
from src.vi_core.cavi import cavi_state_update
from src.vi_core.elbo import ElboValue, fixed_form_elbo, lm_elbo, lm_elbo_local
from src.vi_core.gradient import GradientVariant, data_term, natural_gradient_local
from src.vi_core.natural import (
    NaturalParams,
    fisher_vector_product,
    geometric_average,
    moments_from_nat,
    nat_from_moments,
)

__all__ = [
    "AssociationPosterior",
    "association_posterior",
    "cavi_state_update",
    "ElboValue",
    "fixed_form_elbo",
    "lm_elbo",
    "lm_elbo_local",
    "GradientVariant",
    "data_term",
    "natural_gradient_local",
    "NaturalParams",
    "fisher_vector_product",
    "geometric_average",
    "moments_from_nat",
    "nat_from_moments",
]
