"""Frozen expected values for the flagship map (externally cross-checked
reference data used by several test modules)."""

from gmpy2 import mpq

# the 14 non-exact isolating intervals for the degree-371 parameter
# polynomial, rational endpoints, width < 1e-20 (ascending); the two exact
# roots -1 and 2 complete the list of 16
REF_PARAM_INTERVALS = [
    (mpq("-4308988841618670568853/147573952589676412928"),
     mpq("-34471910732949364550823/1180591620717411303424")),
    (mpq("-34411805733101949308435/1180591620717411303424"),
     mpq("-17205902866550974654217/590295810358705651712")),
    (mpq("-9138398550509024508051/1180591620717411303424"),
     mpq("-4569199275254512254025/590295810358705651712")),
    (mpq("-4416518740855918762195/590295810358705651712"),
     mpq("-8833037481711837524389/1180591620717411303424")),
    (mpq("-994661336537171251825/295147905179352825856"),
     mpq("-3978645346148685007299/1180591620717411303424")),
    (mpq("-3977374161031280580629/1180591620717411303424"),
     mpq("-994343540257820145157/295147905179352825856")),
    (mpq("-197879469664271669175/73786976294838206464"),
     mpq("-3166071514628346706799/1180591620717411303424")),
    (mpq("-3144313156826151948503/1180591620717411303424"),
     mpq("-1572156578413075974251/590295810358705651712")),
    (mpq("-399397086201257638833/295147905179352825856"),
     mpq("-1597588344805030555331/1180591620717411303424")),
    (mpq("-1053526769518098399097/4722366482869645213696"),
     mpq("-131690846189762299887/590295810358705651712")),
    (mpq("-1064910654630154190265/9444732965739290427392"),
     mpq("-133113831828769273783/1180591620717411303424")),
    (mpq("1065572958580542810237/9444732965739290427392"),
     mpq("532786479290271405119/4722366482869645213696")),
    (mpq("128535594827653577343/590295810358705651712"),
     mpq("1028284758621228618745/4722366482869645213696")),
    (mpq("177910645965499912685/147573952589676412928"),
     mpq("1423285167723999301481/1180591620717411303424")),
]

# Step-2 survivor labels of the 16^3 sweep
REF_SURVIVORS = {
    (1, 5, 11), (2, 6, 12), (3, 7, 13), (4, 8, 10),
    (5, 11, 1), (6, 12, 2), (7, 13, 3), (8, 10, 4),
    (9, 9, 9), (10, 4, 8), (11, 1, 5), (12, 2, 6),
    (13, 3, 7), (14, 14, 14), (16, 16, 15), (16, 16, 16),
}

# (a, b) of the four 3-cycles, one row per orbit point (17-20 digits)
REF_ORBITS = [
    [("-25210.658115921519313", "314.52658193224694647"),
     ("-11.080089229288244821", "-29.194152462502174029"),
     ("1.0164106270635353803", "-3.0178440371837045505")],
    [("-25080.503857555317449", "314.36115078061939834"),
     ("-11.094342178650567807", "-29.143225143670723223"),
     ("1.0179782228602330827", "-3.0165421366176918413")],
    [("-550.35997876621370288", "84.580855473468510676"),
     ("-13.613164340185764400", "-7.6737642167841728949"),
     ("0.13590789992610542444", "-2.1255835876361107899")],
    [("-500.96942815695686889", "80.145842594816842809"),
     ("-13.481597649423988848", "-7.4104176831057891201"),
     ("0.088325991394389446424", "-2.0994294342645985249")],
]

# the first orbit point's localization brackets (decimal previews)
REF_O1_A_BRACKET = ("-25210.658115921519312682", "-25210.658115921519312679")
REF_O1_B_BRACKET = ("314.5265819322469464743", "314.5265819322469464749")

# fixed points
REF_P2 = ("-4.20557", "3.95774")
REF_P3 = ("-5.30914", "0.83118")

# saddle data
REF_LAMBDA1 = "7.0701"
REF_LAMBDA2 = "-0.4470"
REF_W = {
    2: "-0.00259107002218996975513519324145",
    3: "-0.00013220529650666650558465802906",
    4: "-0.00000889870356674847560384348601",
    5: "-0.00000069374812274441343473691330",
}

# homoclinic / forbidden-set points (60 digits)
REF_HOMOCLINIC_P = (
    "-5.67750144031789435343891174392876990152177028290023619512062",
    "4.10574868714920935493626045239900450809925741194290963919902",
)
REF_HOMOCLINIC_PT = (
    "-7.32664831286596004531700787733138125161658087249633041273728",
    "4.26205920129322448141657538934356322617112224124511704493689",
)
REF_Q1 = "-6.15163017029193114270539883292276699558057876233980350720282"
REF_QM1 = (
    "-4.43931733951927306713914976146761550810750048579478327758904",
    "3.98185284365899589972467095578564600569428848801825836848384",
)
REF_R_PARAMS = {
    "P": "-1.4820215208774943352",
    "P_tilde": "-3.1470244917790710454",
    "Q": "-1.9602581538616168760",
    "Q_minus1": "-0.2350595678854286111",
}

# one-dimensional conjugate map landmarks
REF_T_FIXED = "-4.4111"
REF_ELL = "-2.6675"
