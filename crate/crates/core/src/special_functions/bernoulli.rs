/// Even-index Bernoulli numbers B_2, B_4, …, B_100.
pub(crate) const BERNOULLI_EVEN: [f64; 50] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
    8.416930475736826e+17,
    -4.0338071854059454e+19,
    2.1150748638081993e+21,
    -1.2086626522296526e+23,
    7.500866746076964e+24,
    -5.038778101481069e+26,
    3.6528776484818122e+28,
    -2.849876930245088e+30,
    2.3865427499683627e+32,
    -2.1399949257225335e+34,
    2.0500975723478097e+36,
    -2.093800591134638e+38,
    2.2752696488463515e+40,
    -2.6257710286239577e+42,
    3.212508210271803e+44,
    -4.159827816679471e+46,
    5.692069548203528e+48,
    -8.218362941978458e+50,
    1.2502904327166994e+53,
    -2.001558323324837e+55,
    3.3674982915364376e+57,
    -5.947097050313545e+59,
    1.1011910323627977e+62,
    -2.1355259545253502e+64,
    4.3328896986641194e+66,
    -9.188552824166933e+68,
    2.0346896776329074e+71,
    -4.700383395803573e+73,
    1.131804344548425e+76,
    -2.8382249570693707e+78,
];

/// B_{2k} / (2k)! for k = 1..=50, the Euler–Maclaurin correction weights.
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 50] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
    6.514456035233815e-50,
    -1.6501309906896525e-51,
    4.179830628539476e-53,
    -1.058763466770291e-54,
    2.6818791912607708e-56,
    -6.793279351107421e-58,
    1.7207577616681404e-59,
    -4.358730329348894e-61,
    1.1040792903684666e-62,
    -2.7966655133781345e-64,
    7.084036501679471e-66,
    -1.794407408289224e-67,
    4.545287063611096e-69,
    -1.1513346631982051e-70,
    2.9163647710923614e-72,
    -7.387238263497337e-74,
    1.8712093117637953e-75,
    -4.739828557761799e-77,
    1.2006125993354507e-78,
    -3.0411872415142924e-80,
];
