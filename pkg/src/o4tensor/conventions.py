"""Wigner-Eckart conventions for a rank-1 tensor operator ``T_q``.

STANDARD
    ``<l' m'| T_q |l m> = <l m; 1 q | l' m'> R(l', l)``, no dimension factor.
    Nonzero only when ``m' = m + q``.

PAPER
    The bra supplies the first argument list of the coupling coefficient:
    ``<l' m'| T_q |l m> = <l' m'; 1 q | l m> R(l', l)``, nonzero only when
    ``m = m' + q``.  Inside an operator product the right-hand factor
    ``<l' m'| T_q |l m>`` is reflected to ``<l m| T_-q |l' m'>*`` before the
    rule is applied, so both coupling coefficients are anchored on the outer
    states.  Reduced elements are real here, so the conjugation is dropped.
"""
import enum

__all__ = ["Convention"]


class Convention(enum.Enum):
    STANDARD = "standard"
    PAPER = "paper"
