"""Exact symbolic algebra for IA-automorphism matrices over Laurent rings.

Subpackages:
  ring    -- sparse exact Laurent polynomials, structured ideals, witnesses
  magnus  -- the faithful 2x2 triangular representation and its finite images
  ia      -- matrices acting trivially on the abelianization, projections
  elem    -- elementary/relative subgroup witnesses and decompositions
  ksym    -- Steinberg words, symbols, lifts, and small coefficient rings
  verify  -- the declarative identity-chain verification suite
  cli     -- the `iakit` command-line front end
"""

from .ring import (LaurentPoly, RingError, NotDivisible, IdealRef,
                   ModGroupRingElem, TmWitness, ideal_member, lp_parse,
                   lp_arith, lp_specialize, lp_reduce_mod_Hm,
                   lp_divide_exact, unit_check, hm2_in_tm_witness)
from .magnus import (MagnusElement, MagnusError, PsiElement, mg_generator,
                     mg_mul, mg_inv, mg_eval, word_parse, mg_project_psi,
                     psi_enumerate)
from .ia import (IAError, NotIA, PolyMatrix, IAMatrix, matrix_parse,
                 sigma_vec, ia_validate, ia_is_valid, ia_mul, ia_inv,
                 ia_generator_E, ia_apply, ia_rho, igl_embed, igl_project,
                 complete_column, ig_member, random_ig_element, rho_ig_probe)
from .elem import (WitnessError, ElemToken, elem_eval, SuslinGenerator,
                   suslin_eval, PowerM, Template, Conj, Inv, IAmWitness,
                   template_value, factor_value, witness_value,
                   witness_verify, sec6_generator,
                   form1_power_identity_check, FormFactor, TmComponent,
                   WitnessedSuslin, decompose_form)
from .ksym import (KsymError, ZmodRing, ZRing, LaurentSRing, GroupRingZmZmn,
                   SteinbergWord, st_gen, st_symbol_word, st_eval,
                   st_lift_eval, dm_normality_identities, det_dm_split,
                   SBarRing, sbar_ops)
from .verify import (VerifyError, SymbolicParam, ChainScript, ChainReport,
                     ExactStep, MemberStep, CongruenceStep, DetStep, RhsItem,
                     chain_check, universality_instantiate, mutate_script,
                     builtin_suite, get_script, script_names, COVERAGE,
                     embed_block)

__version__ = "1.0.0"
