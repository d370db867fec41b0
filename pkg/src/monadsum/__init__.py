"""Coproducts of computable monads on finite sets.

Builds (S (+) T)A as (S*A + T*A) + A from the initial solution of
X = S-bar(Y+A), Y = T-bar(X+A) over injections, exposes the unit
complement, chain solver, bialgebra machinery, layered-term symbolic
mode, free monads on signatures, empty-set closure, and a fixpoint
advisor for existence questions the chains cannot settle."""

from .finset import (Atom, FinMap, FinSet, Label, LabelSet, Opaque, Tagged,
                     atom_set, coproduct as set_coproduct, equalizer, fset,
                     identity, is_injective, nat_set, search_bijection)
from .monad import (MonadSpec, FunctorSpec, MonadMorphism, builtin,
                    check_laws, classify_consistency, gamma, kleisli_ext,
                    preserves_injections)
from .complement import complement, complement_action, minimal_support
from .chains import run_chain, two_sort_system, family_system
from .bialgebra import (Bialgebra, EMAlgebra, enumerate_em_algebras,
                        free_algebra, transport)
from .coproduct import (CoproductMonad, build, canonical_compare, embeddings,
                        exception_oracle, family_build,
                        injective_morphism_transfer, special_cases)
from .trnkova import closure_at_empty, classify, monad_closure, zero_submonad
from .freemonad import signature, term_monad, verify_barr
from . import advisor

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
