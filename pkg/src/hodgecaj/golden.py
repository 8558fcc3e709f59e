"""Reference expansions used by the verification commands and the test-suite.

Coefficients are written in the scalar parser syntax: ``q`` is allowed and
rewritten as ``s^2 - p``, and ``s`` stands for sqrt(p + q), so a power
(p + q)^(k/2) is written ``s^k``.  Monomials use the ``t1^2*t3`` form.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .tpoly import TPolynomial, poly_from_text

Entry = Tuple[str, str]

# log of the base tau-functions, level by level
BASE_LOG: Dict[int, Dict[int, List[Entry]]] = {
    0: {
        1: [("t1", "1/8")],
        2: [("t1^2", "1/16")],
        3: [("t1^3", "1/24"), ("t3", "9/128")],
        4: [("t1^4", "1/32"), ("t1*t3", "27/128")],
        5: [("t1^5", "1/40"), ("t1^2*t3", "27/64"), ("t5", "225/1024")],
        6: [("t1^6", "1/48"), ("t1^3*t3", "45/64"), ("t1*t5", "1125/1024"), ("t3^2", "567/1024")],
    },
    1: {
        1: [("t1^3", "1/6"), ("t3", "1/8")],
        2: [("t1^3*t3", "1/2"), ("t1*t5", "5/8"), ("t3^2", "3/16")],
        3: [
            ("t1*t3*t5", "15/4"),
            ("t1^3*t3^2", "3/2"),
            ("t1^4*t5", "5/8"),
            ("t1^2*t7", "35/16"),
            ("t3^3", "3/8"),
            ("t9", "105/128"),
        ],
    },
}

# log of the Hodge tau-functions in (p, s)
HODGE_LOG: Dict[int, Dict[int, List[Entry]]] = {
    0: {
        1: [("t1", "1/8")],
        2: [("t1^2", "1/16"), ("1", "-(1/128)*(p^2+p*q+q^2)/(p+q)")],
        3: [
            ("t3", "9/128"),
            ("t1^3", "1/24"),
            ("t2", "(3/64)*(p+2*q)/s"),
            ("t1", "-(1/128)*(2*p^2-p*q-q^2)/(p+q)"),
        ],
        4: [
            ("t1*t3", "27/128"),
            ("t1^4", "1/32"),
            ("t1*t2", "(9/64)*(p+2*q)/s"),
            ("t1^2", "-(3/128)*(p^2-2*p*q-2*q^2)/(p+q)"),
            ("1", "(1/512)*(p^4+2*p^3*q+3*p^2*q^2+2*p*q^3+q^4)/(p+q)^2"),
        ],
        5: [
            ("t5", "225/1024"),
            ("t1^2*t3", "27/64"),
            ("t1^5", "1/40"),
            ("t4", "(75/256)*(p+2*q)/s"),
            ("t1^2*t2", "(9/32)*(p+2*q)/s"),
            ("t3", "(3/512)*(4*p^2+79*p*q+79*q^2)/(p+q)"),
            ("t1^3", "-(1/64)*(2*p^2-7*p*q-7*q^2)/(p+q)"),
            ("t2", "-(1/512)*(22*p^3+21*p^2*q-69*p*q^2-46*q^3)/s^3"),
            ("t1", "(1/1024)*(8*p^4-6*p^3*q-5*p^2*q^2+2*p*q^3+q^4)/(p+q)^2"),
        ],
        6: [
            ("t1*t5", "1125/1024"),
            ("t3^2", "567/1024"),
            ("t1^3*t3", "45/64"),
            ("t1^6", "1/48"),
            ("t1*t4", "(375/256)*(p+2*q)/s"),
            ("t2*t3", "(189/256)*(p+2*q)/s"),
            ("t1^3*t2", "(15/32)*(p+2*q)/s"),
            ("t1*t3", "(3/256)*(10*p^2+229*p*q+229*q^2)/(p+q)"),
            ("t2^2", "(63/256)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t1^4", "-(5/128)*(p^2-5*p*q-5*q^2)/(p+q)"),
            ("t1*t2", "-(1/512)*(110*p^3-21*p^2*q-723*p*q^2-482*q^3)/s^3"),
            ("t1^2", "(1/512)*(10*p^4-35*p^3*q-11*p^2*q^2+48*p*q^3+24*q^4)/(p+q)^2"),
            (
                "1",
                "-(1/12288)*(17*p^6+51*p^5*q+105*p^4*q^2+125*p^3*q^3+105*p^2*q^4+51*p*q^5+17*q^6)/(p+q)^3",
            ),
        ],
        7: [
            ("t7", "55125/32768"),
            ("t1^2*t5", "3375/1024"),
            ("t1*t3^2", "1701/512"),
            ("t1^4*t3", "135/128"),
            ("t1^7", "1/56"),
            ("t6", "(55125/16384)*(p+2*q)/s"),
            ("t1^2*t4", "(1125/256)*(p+2*q)/s"),
            ("t1*t2*t3", "(567/128)*(p+2*q)/s"),
            ("t1^4*t2", "(45/64)*(p+2*q)/s"),
            ("t5", "(1875/32768)*(26*p^2+173*p*q+173*q^2)/(p+q)"),
            ("t1^2*t3", "(9/512)*(20*p^2+521*p*q+521*q^2)/(p+q)"),
            ("t1*t2^2", "(189/128)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t1^5", "-(3/128)*(2*p^2-13*p*q-13*q^2)/(p+q)"),
            ("t4", "-(25/4096)*(67*p^3-387*p^2*q-1563*p*q^2-1042*q^3)/s^3"),
            ("t1^2*t2", "-(3/512)*(110*p^3-147*p^2*q-1101*p*q^2-734*q^3)/s^3"),
            ("t3", "-(3/32768)*(1548*p^4+9796*p^3*q-7681*p^2*q^2-34954*p*q^3-17477*q^4)/(p+q)^2"),
            ("t1^3", "(1/1024)*(40*p^4-250*p^3*q+63*p^2*q^2+626*p*q^3+313*q^4)/(p+q)^2"),
            ("t2", "(1/16384)*(1052*p^5+308*q*p^4-4561*q^2*p^3-284*q^3*p^2+4135*q^4*p+1654*q^5)/s^5"),
            ("t1", "-(1/32768)*(272*p^6-236*p^5*q-176*p^4*q^2+115*p^3*q^3+45*p^2*q^4-15*p*q^5-5*q^6)/(p+q)^3"),
        ],
    },
    1: {
        1: [
            ("t3", "1/8"),
            ("t1^3", "1/6"),
            ("t2", "(1/12)*(p+2*q)/s"),
            ("t1", "-(1/24)*p^2/(p+q)"),
        ],
        2: [
            ("t1^3*t3", "1/2"),
            ("t1*t5", "5/8"),
            ("t3^2", "3/16"),
            ("t1*t4", "(5/6)*(p+2*q)/s"),
            ("t2*t3", "(1/4)*(p+2*q)/s"),
            ("t1^3*t2", "(1/3)*(p+2*q)/s"),
            ("t1*t3", "(1/8)*(p^2+12*p*q+12*q^2)/(p+q)"),
            ("t2^2", "(1/12)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t1^4", "(1/6)*q"),
            ("t1*t2", "-(1/12)*(p^3-p^2*q-9*p*q^2-6*q^3)/s^3"),
            ("t1^2", "-(1/48)*q*(2*p^2-p*q-q^2)/(p+q)"),
            ("1", "-(1/5760)*p^2*q^2/(p+q)"),
        ],
        3: [
            ("t1^4*t5", "5/8"),
            ("t1^3*t3^2", "3/2"),
            ("t1^2*t7", "35/16"),
            ("t1*t3*t5", "15/4"),
            ("t3^3", "3/8"),
            ("t9", "105/128"),
            ("t1^2*t6", "(35/8)*(p+2*q)/s"),
            ("t2*t3^2", "(3/4)*(p+2*q)/s"),
            ("t8", "(35/16)*(p+2*q)/s"),
            ("t1^4*t4", "(5/6)*(p+2*q)/s"),
            ("t1^3*t2*t3", "2*(p+2*q)/s"),
            ("t1*t2*t5", "(5/2)*(p+2*q)/s"),
            ("t1*t3*t4", "5*(p+2*q)/s"),
            ("t1*t2*t4", "(10/3)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t1*t3^2", "(9/8)*(p^2+8*p*q+8*q^2)/(p+q)"),
            ("t1^2*t5", "(5/48)*(23*p^2+140*p*q+140*q^2)/(p+q)"),
            ("t1^4*t3", "(1/4)*(p^2+10*p*q+10*q^2)/(p+q)"),
            ("t7", "(7/288)*(76*p^2+391*p*q+391*q^2)/(p+q)"),
            ("t1^3*t2^2", "(2/3)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t2^2*t3", "(1/2)*(p^2+4*p*q+4*q^2)/(p+q)"),
            ("t1*t2*t3", "(1/2)*(p^3+17*p^2*q+45*p*q^2+30*q^3)/s^3"),
            ("t1^2*t4", "(1/12)*(p^3+79*p^2*q+231*p*q^2+154*q^3)/s^3"),
            ("t1^4*t2", "(11/12)*(p+2*q)*q/s"),
            ("t2^3", "(1/9)*(p^3+6*p^2*q+12*p*q^2+8*q^3)/s^3"),
            ("t6", "(7/192)*(10*p^3+167*p^2*q+441*p*q^2+294*q^3)/s^3"),
            ("t1^2*t3", "-(1/16)*(2*p^4-2*p^3*q-101*p^2*q^2-198*p*q^3-99*q^4)/(p+q)^2"),
            ("t1^5", "(5/24)*q^2"),
            ("t5", "-(1/384)*(57*p^4-236*p^3*q-2769*p^2*q^2-5066*p*q^3-2533*q^4)/(p+q)^2"),
            ("t1*t2^2", "-(1/6)*(p^4-2*p^3*q-26*p^2*q^2-48*p*q^3-24*q^4)/(p+q)^2"),
            ("t4", "-(1/1440)*(37*p^5+520*p^4*q-178*p^3*q^2-5172*p^2*q^3-7580*p*q^4-3032*q^5)/s^5"),
            ("t1^2*t2", "-(1/24)*(7*p^3-4*p^2*q-54*p*q^2-36*q^3)*q/s^3"),
            ("t1^3", "-(1/144)*(9*p^2-8*p*q-8*q^2)*q^2/(p+q)"),
            (
                "t3",
                "(1/960)*(7*p^6-16*q*p^5-239*q^2*p^4-170*p^3*q^3+605*q^4*p^2+828*p*q^5+276*q^6)/(p+q)^3",
            ),
            ("t2", "(1/2880)*(21*p^5-2*p^4*q-120*p^3*q^2-40*p^2*q^3+60*p*q^4+24*q^5)*q/s^5"),
            ("t1", "(7/5760)*p^4*q^2/(p+q)^2"),
        ],
    },
}


def base_log(alpha: int, level: int) -> TPolynomial:
    return poly_from_text(BASE_LOG[alpha][level])


def hodge_log(alpha: int, level: int) -> TPolynomial:
    return poly_from_text(HODGE_LOG[alpha][level])


def available_levels(alpha: int, table: str = "hodge") -> List[int]:
    data = HODGE_LOG if table == "hodge" else BASE_LOG
    return sorted(data[alpha])
