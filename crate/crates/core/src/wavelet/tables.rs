// Generated by tools/gen_filters.py from PyWavelets 1.8.0. Do not edit.
#![allow(clippy::approx_constant)]

use super::filters::FilterBank;

const HAAR_DEC_LO: [f64; 2] = [0.7071067811865476, 0.7071067811865476];

const HAAR_DEC_HI: [f64; 2] = [-0.7071067811865476, 0.7071067811865476];

const HAAR_REC_LO: [f64; 2] = [0.7071067811865476, 0.7071067811865476];

const HAAR_REC_HI: [f64; 2] = [0.7071067811865476, -0.7071067811865476];

pub(super) const HAAR: FilterBank = FilterBank {
    dec_lo: &HAAR_DEC_LO,
    dec_hi: &HAAR_DEC_HI,
    rec_lo: &HAAR_REC_LO,
    rec_hi: &HAAR_REC_HI,
};

const DB2_DEC_LO: [f64; 4] = [
    -0.12940952255126037,
    0.2241438680420134,
    0.8365163037378079,
    0.48296291314453416,
];

const DB2_DEC_HI: [f64; 4] = [
    -0.48296291314453416,
    0.8365163037378079,
    -0.2241438680420134,
    -0.12940952255126037,
];

const DB2_REC_LO: [f64; 4] = [
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
];

const DB2_REC_HI: [f64; 4] = [
    -0.12940952255126037,
    -0.2241438680420134,
    0.8365163037378079,
    -0.48296291314453416,
];

pub(super) const DB2: FilterBank = FilterBank {
    dec_lo: &DB2_DEC_LO,
    dec_hi: &DB2_DEC_HI,
    rec_lo: &DB2_REC_LO,
    rec_hi: &DB2_REC_HI,
};

const DB3_DEC_LO: [f64; 6] = [
    0.03522629188570953,
    -0.08544127388202666,
    -0.13501102001025458,
    0.45987750211849154,
    0.8068915093110925,
    0.33267055295008263,
];

const DB3_DEC_HI: [f64; 6] = [
    -0.33267055295008263,
    0.8068915093110925,
    -0.45987750211849154,
    -0.13501102001025458,
    0.08544127388202666,
    0.03522629188570953,
];

const DB3_REC_LO: [f64; 6] = [
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
];

const DB3_REC_HI: [f64; 6] = [
    0.03522629188570953,
    0.08544127388202666,
    -0.13501102001025458,
    -0.45987750211849154,
    0.8068915093110925,
    -0.33267055295008263,
];

pub(super) const DB3: FilterBank = FilterBank {
    dec_lo: &DB3_DEC_LO,
    dec_hi: &DB3_DEC_HI,
    rec_lo: &DB3_REC_LO,
    rec_hi: &DB3_REC_HI,
};

const DB4_DEC_LO: [f64; 8] = [
    -0.010597401785069032,
    0.0328830116668852,
    0.030841381835560764,
    -0.18703481171909309,
    -0.027983769416859854,
    0.6308807679298589,
    0.7148465705529157,
    0.2303778133088965,
];

const DB4_DEC_HI: [f64; 8] = [
    -0.2303778133088965,
    0.7148465705529157,
    -0.6308807679298589,
    -0.027983769416859854,
    0.18703481171909309,
    0.030841381835560764,
    -0.0328830116668852,
    -0.010597401785069032,
];

const DB4_REC_LO: [f64; 8] = [
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

const DB4_REC_HI: [f64; 8] = [
    -0.010597401785069032,
    -0.0328830116668852,
    0.030841381835560764,
    0.18703481171909309,
    -0.027983769416859854,
    -0.6308807679298589,
    0.7148465705529157,
    -0.2303778133088965,
];

pub(super) const DB4: FilterBank = FilterBank {
    dec_lo: &DB4_DEC_LO,
    dec_hi: &DB4_DEC_HI,
    rec_lo: &DB4_REC_LO,
    rec_hi: &DB4_REC_HI,
};

const BIOR13_DEC_LO: [f64; 6] = [
    -0.08838834764831845,
    0.08838834764831845,
    0.7071067811865476,
    0.7071067811865476,
    0.08838834764831845,
    -0.08838834764831845,
];

const BIOR13_DEC_HI: [f64; 6] = [0.0, 0.0, -0.7071067811865476, 0.7071067811865476, 0.0, 0.0];

const BIOR13_REC_LO: [f64; 6] = [0.0, 0.0, 0.7071067811865476, 0.7071067811865476, 0.0, 0.0];

const BIOR13_REC_HI: [f64; 6] = [
    -0.08838834764831845,
    -0.08838834764831845,
    0.7071067811865476,
    -0.7071067811865476,
    0.08838834764831845,
    0.08838834764831845,
];

pub(super) const BIOR13: FilterBank = FilterBank {
    dec_lo: &BIOR13_DEC_LO,
    dec_hi: &BIOR13_DEC_HI,
    rec_lo: &BIOR13_REC_LO,
    rec_hi: &BIOR13_REC_HI,
};

const BIOR15_DEC_LO: [f64; 10] = [
    0.016572815184059706,
    -0.016572815184059706,
    -0.12153397801643785,
    0.12153397801643785,
    0.7071067811865476,
    0.7071067811865476,
    0.12153397801643785,
    -0.12153397801643785,
    -0.016572815184059706,
    0.016572815184059706,
];

const BIOR15_DEC_HI: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.0,
    -0.7071067811865476,
    0.7071067811865476,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR15_REC_LO: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.7071067811865476,
    0.7071067811865476,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR15_REC_HI: [f64; 10] = [
    0.016572815184059706,
    0.016572815184059706,
    -0.12153397801643785,
    -0.12153397801643785,
    0.7071067811865476,
    -0.7071067811865476,
    0.12153397801643785,
    0.12153397801643785,
    -0.016572815184059706,
    -0.016572815184059706,
];

pub(super) const BIOR15: FilterBank = FilterBank {
    dec_lo: &BIOR15_DEC_LO,
    dec_hi: &BIOR15_DEC_HI,
    rec_lo: &BIOR15_REC_LO,
    rec_hi: &BIOR15_REC_HI,
};

const BIOR22_DEC_LO: [f64; 6] = [
    0.0,
    -0.1767766952966369,
    0.3535533905932738,
    1.0606601717798212,
    0.3535533905932738,
    -0.1767766952966369,
];

const BIOR22_DEC_HI: [f64; 6] = [
    0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
];

const BIOR22_REC_LO: [f64; 6] = [
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
];

const BIOR22_REC_HI: [f64; 6] = [
    0.0,
    0.1767766952966369,
    0.3535533905932738,
    -1.0606601717798212,
    0.3535533905932738,
    0.1767766952966369,
];

pub(super) const BIOR22: FilterBank = FilterBank {
    dec_lo: &BIOR22_DEC_LO,
    dec_hi: &BIOR22_DEC_HI,
    rec_lo: &BIOR22_REC_LO,
    rec_hi: &BIOR22_REC_HI,
};

const BIOR24_DEC_LO: [f64; 10] = [
    0.0,
    0.03314563036811941,
    -0.06629126073623882,
    -0.1767766952966369,
    0.4198446513295126,
    0.9943689110435825,
    0.4198446513295126,
    -0.1767766952966369,
    -0.06629126073623882,
    0.03314563036811941,
];

const BIOR24_DEC_HI: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR24_REC_LO: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR24_REC_HI: [f64; 10] = [
    0.0,
    -0.03314563036811941,
    -0.06629126073623882,
    0.1767766952966369,
    0.4198446513295126,
    -0.9943689110435825,
    0.4198446513295126,
    0.1767766952966369,
    -0.06629126073623882,
    -0.03314563036811941,
];

pub(super) const BIOR24: FilterBank = FilterBank {
    dec_lo: &BIOR24_DEC_LO,
    dec_hi: &BIOR24_DEC_HI,
    rec_lo: &BIOR24_REC_LO,
    rec_hi: &BIOR24_REC_HI,
};

const BIOR31_DEC_LO: [f64; 4] = [
    -0.3535533905932738,
    1.0606601717798212,
    1.0606601717798212,
    -0.3535533905932738,
];

const BIOR31_DEC_HI: [f64; 4] = [
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
];

const BIOR31_REC_LO: [f64; 4] = [
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
];

const BIOR31_REC_HI: [f64; 4] = [
    -0.3535533905932738,
    -1.0606601717798212,
    1.0606601717798212,
    0.3535533905932738,
];

pub(super) const BIOR31: FilterBank = FilterBank {
    dec_lo: &BIOR31_DEC_LO,
    dec_hi: &BIOR31_DEC_HI,
    rec_lo: &BIOR31_REC_LO,
    rec_hi: &BIOR31_REC_HI,
};

const COIF1_DEC_LO: [f64; 6] = [
    -0.015655728135791993,
    -0.07273261951252645,
    0.3848648468648578,
    0.8525720202116004,
    0.3378976624574818,
    -0.07273261951252645,
];

const COIF1_DEC_HI: [f64; 6] = [
    0.07273261951252645,
    0.3378976624574818,
    -0.8525720202116004,
    0.3848648468648578,
    0.07273261951252645,
    -0.015655728135791993,
];

const COIF1_REC_LO: [f64; 6] = [
    -0.07273261951252645,
    0.3378976624574818,
    0.8525720202116004,
    0.3848648468648578,
    -0.07273261951252645,
    -0.015655728135791993,
];

const COIF1_REC_HI: [f64; 6] = [
    -0.015655728135791993,
    0.07273261951252645,
    0.3848648468648578,
    -0.8525720202116004,
    0.3378976624574818,
    0.07273261951252645,
];

pub(super) const COIF1: FilterBank = FilterBank {
    dec_lo: &COIF1_DEC_LO,
    dec_hi: &COIF1_DEC_HI,
    rec_lo: &COIF1_REC_LO,
    rec_hi: &COIF1_REC_HI,
};

const COIF2_DEC_LO: [f64; 12] = [
    -0.000720549445520347,
    -0.0018232088709110323,
    0.005611434819368834,
    0.02368017194684777,
    -0.05943441864643109,
    -0.07648859907828076,
    0.4170051844232391,
    0.8127236354494135,
    0.3861100668227629,
    -0.0673725547237256,
    -0.04146493678687178,
    0.01638733646320364,
];

const COIF2_DEC_HI: [f64; 12] = [
    -0.01638733646320364,
    -0.04146493678687178,
    0.0673725547237256,
    0.3861100668227629,
    -0.8127236354494135,
    0.4170051844232391,
    0.07648859907828076,
    -0.05943441864643109,
    -0.02368017194684777,
    0.005611434819368834,
    0.0018232088709110323,
    -0.000720549445520347,
];

const COIF2_REC_LO: [f64; 12] = [
    0.01638733646320364,
    -0.04146493678687178,
    -0.0673725547237256,
    0.3861100668227629,
    0.8127236354494135,
    0.4170051844232391,
    -0.07648859907828076,
    -0.05943441864643109,
    0.02368017194684777,
    0.005611434819368834,
    -0.0018232088709110323,
    -0.000720549445520347,
];

const COIF2_REC_HI: [f64; 12] = [
    -0.000720549445520347,
    0.0018232088709110323,
    0.005611434819368834,
    -0.02368017194684777,
    -0.05943441864643109,
    0.07648859907828076,
    0.4170051844232391,
    -0.8127236354494135,
    0.3861100668227629,
    0.0673725547237256,
    -0.04146493678687178,
    -0.01638733646320364,
];

pub(super) const COIF2: FilterBank = FilterBank {
    dec_lo: &COIF2_DEC_LO,
    dec_hi: &COIF2_DEC_HI,
    rec_lo: &COIF2_REC_LO,
    rec_hi: &COIF2_REC_HI,
};

const COIF3_DEC_LO: [f64; 18] = [
    -3.459977319727278e-05,
    -7.0983302506379e-05,
    0.0004662169598204029,
    0.0011175187708306303,
    -0.0025745176881367972,
    -0.009007976136730624,
    0.015880544863669452,
    0.03455502757329774,
    -0.08230192710629983,
    -0.07179982161915484,
    0.42848347637737,
    0.7937772226260872,
    0.40517690240911824,
    -0.06112339000297255,
    -0.06577191128146936,
    0.023452696142077168,
    0.007782596425672746,
    -0.003793512864380802,
];

const COIF3_DEC_HI: [f64; 18] = [
    0.003793512864380802,
    0.007782596425672746,
    -0.023452696142077168,
    -0.06577191128146936,
    0.06112339000297255,
    0.40517690240911824,
    -0.7937772226260872,
    0.42848347637737,
    0.07179982161915484,
    -0.08230192710629983,
    -0.03455502757329774,
    0.015880544863669452,
    0.009007976136730624,
    -0.0025745176881367972,
    -0.0011175187708306303,
    0.0004662169598204029,
    7.0983302506379e-05,
    -3.459977319727278e-05,
];

const COIF3_REC_LO: [f64; 18] = [
    -0.003793512864380802,
    0.007782596425672746,
    0.023452696142077168,
    -0.06577191128146936,
    -0.06112339000297255,
    0.40517690240911824,
    0.7937772226260872,
    0.42848347637737,
    -0.07179982161915484,
    -0.08230192710629983,
    0.03455502757329774,
    0.015880544863669452,
    -0.009007976136730624,
    -0.0025745176881367972,
    0.0011175187708306303,
    0.0004662169598204029,
    -7.0983302506379e-05,
    -3.459977319727278e-05,
];

const COIF3_REC_HI: [f64; 18] = [
    -3.459977319727278e-05,
    7.0983302506379e-05,
    0.0004662169598204029,
    -0.0011175187708306303,
    -0.0025745176881367972,
    0.009007976136730624,
    0.015880544863669452,
    -0.03455502757329774,
    -0.08230192710629983,
    0.07179982161915484,
    0.42848347637737,
    -0.7937772226260872,
    0.40517690240911824,
    0.06112339000297255,
    -0.06577191128146936,
    -0.023452696142077168,
    0.007782596425672746,
    0.003793512864380802,
];

pub(super) const COIF3: FilterBank = FilterBank {
    dec_lo: &COIF3_DEC_LO,
    dec_hi: &COIF3_DEC_HI,
    rec_lo: &COIF3_REC_LO,
    rec_hi: &COIF3_REC_HI,
};
