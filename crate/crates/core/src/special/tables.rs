//! Chebyshev coefficient tables for the Bessel mid/far branches.
//!
//! Generated by tools/gen_chebyshev_tables.py; do not edit by hand.
//! Coefficients follow the Clenshaw c0/2 convention.

pub(crate) const K0_MID_RANGE: (f64, f64) = (2.0, 20.0);
pub(crate) const K0_MID: [f64; 56] = [
    2.4628606573587066,
    0.021176653610439748,
    -0.010282024076884232,
    0.0050082693722070136,
    -0.0024466381047664894,
    0.0011984570144805134,
    -0.0005885107826188987,
    0.00028965679091760664,
    -0.0001428685951295485,
    7.060693782423755e-05,
    -3.495873847607686e-05,
    1.733835235193078e-05,
    -8.61300209489998e-06,
    4.285005260570214e-06,
    -2.134802147158035e-06,
    1.064967328258999e-06,
    -5.319286567466993e-07,
    2.659976671747241e-07,
    -1.3316221741870504e-07,
    6.673238465054111e-08,
    -3.347498844796445e-08,
    1.6807765026031217e-08,
    -8.446649734015313e-09,
    4.2483935819015686e-09,
    -2.138517822151615e-09,
    1.0772890689020442e-09,
    -5.430844874971811e-10,
    2.739705386224973e-10,
    -1.383019028560155e-10,
    6.985985012717081e-11,
    -3.530941484739858e-11,
    1.7856883965425516e-11,
    -9.035718704873828e-12,
    4.574586083633321e-12,
    -2.3172013098640135e-12,
    1.1743293042084289e-12,
    -5.954180682740824e-13,
    3.0203158393348516e-13,
    -1.5327581572249527e-13,
    7.781779411444435e-14,
    -3.952406857736165e-14,
    2.00823997252601e-14,
    -1.0207864785903631e-14,
    5.190556824150987e-15,
    -2.640264334683051e-15,
    1.3434769663061007e-15,
    -6.838448468060515e-16,
    3.4819688357438456e-16,
    -1.773485949464752e-16,
    9.035704514292224e-17,
    -4.6049370493258663e-17,
    2.3475182435575958e-17,
    -1.1970553013672711e-17,
    6.1057065765745876e-18,
    -3.1150913532473052e-18,
    1.5897015378998815e-18,
];

pub(crate) const K0_FAR_RANGE: (f64, f64) = (0.0, 0.05);
pub(crate) const K0_FAR: [f64; 11] = [
    2.498953562700194,
    -0.0038114790885531795,
    2.556086839799953e-05,
    -3.104564985398844e-07,
    5.42561119965126e-09,
    -1.2283429180798943e-10,
    3.393643465335142e-12,
    -1.1010652268815183e-13,
    4.084867632921466e-15,
    -1.699300114273827e-16,
    7.809298122993188e-18,
];

pub(crate) const Y0_MID_RANGE: (f64, f64) = (4.5, 16.0);
pub(crate) const Y0_MID: [f64; 33] = [
    -0.054767493925928425,
    0.17873072999198905,
    -0.04385475179384899,
    0.1002109705992869,
    0.005896858945903737,
    -0.17797410614717835,
    0.021726165999182426,
    0.05046221807231251,
    -0.00661967513245677,
    -0.0066772187943947205,
    0.0008494327664531288,
    0.0005331393014856479,
    -6.445397659913998e-05,
    -2.8836049579463615e-05,
    3.2836264620465197e-06,
    1.139211674628794e-06,
    -1.2259920203319698e-07,
    -3.4142746508330506e-08,
    3.432779916080488e-09,
    8.267481819356871e-10,
    -8.120823552363086e-11,
    -1.4828146853461997e-11,
    1.149992244404008e-12,
    3.3423058676454e-13,
    -4.5871317241894687e-14,
    3.763748481242473e-15,
    -1.847383452455595e-15,
    6.698955674466692e-16,
    -1.903801937949056e-16,
    5.530485455103369e-17,
    -1.6544474686451926e-17,
    4.939288796528813e-18,
    -1.4714073757737187e-18,
];

pub(crate) const Y0_FAR_AMP_RANGE: (f64, f64) = (0.0, 0.0625);
pub(crate) const Y0_FAR_AMP: [f64; 12] = [
    1.5956237025473665,
    -9.685627349595124e-05,
    -2.4079810019434897e-05,
    7.61285662676025e-08,
    9.069184723110532e-09,
    -1.3470055554899192e-10,
    -9.232305988046075e-12,
    3.9570974825955534e-13,
    1.3023033218669585e-14,
    -1.5868343719301527e-15,
    4.468683733725769e-18,
    7.234767162164528e-18,
];

pub(crate) const Y0_FAR_PHASE_RANGE: (f64, f64) = (0.0, 0.0625);
pub(crate) const Y0_FAR_PHASE: [f64; 12] = [
    -0.007802661823044677,
    -0.003898879262664669,
    2.9348044236361636e-06,
    4.798407695336214e-07,
    -3.652570458649068e-09,
    -3.2961341989313995e-10,
    8.621389821544366e-12,
    4.310400135832072e-13,
    -3.035323627342545e-14,
    -4.731808018263465e-16,
    1.3338874296956535e-16,
    -3.2299116081572673e-18,
];

