// Frozen reference values for K0/K1 at complex arguments, generated with an
// arbitrary-precision library (40 significant digits, rounded to double).
// Values are scaled by e^z to stay representable at large |z|.
#pragma once

#include <complex>

namespace exstokes_test {

struct BesselRef {
  std::complex<double> z;
  std::complex<double> ez_k0;
  std::complex<double> ez_k1;
};

inline const BesselRef kBesselRefs[] = {
  {{9.999999999999999547e-07, 0.000000000000000000e+00}, {1.393145600507545900e+01, 0.000000000000000000e+00}, {1.000000999993284349e+06, 0.000000000000000000e+00}},
  {{9.553364891256059857e-07, 2.955202066613395501e-07}, {1.393145547150266417e+01, -2.999961695724508437e-01}, {9.553374891191459028e+05, -2.955202066631808993e+05}},
  {{8.253356149096783151e-07, -5.646424733950352851e-07}, {1.393145391052777704e+01, 5.999926289076500385e-01}, {8.253366149039661977e+05, 5.646424733985797502e+05}},
  {{9.553364891256060280e-05, 2.955202066613395946e-05}, {9.327171787091208088e+00, -2.997530108622799006e-01}, {9.554364465180253319e+03, -2.955202182725997773e+03}},
  {{8.253356149096783363e-05, -5.646424733950353359e-05}, {9.327075527062543614e+00, 5.995228533173286856e-01}, {8.254355767905686662e+03, 5.646424958417838752e+03}},
  {{5.403023058681397540e-05, 8.414709848078965053e-05}, {9.326859912020768917e+00, -9.992691825135958661e-01}, {5.404022778180304158e+03, -8.414710192461674524e+03}},
  {{8.253356149096783417e-03, -5.646424733950353332e-03}, {4.763633528522953853e+00, 5.779554309683716529e-01}, {8.351433211312063065e+01, 5.647390695066358290e+01}},
  {{5.403023058681397268e-03, 8.414709848078965812e-03}, {4.754932932013121061e+00, -9.652996933106708921e-01}, {5.501467769622343695e+01, -8.416240020661749099e+01}},
  {{2.674988286245873897e-03, -9.635581854171930069e-03}, {4.745980300199843960e+00, 1.257709100291689364e+00}, {2.773815140705604776e+01, 9.637459702636459724e+01}},
  {{5.403023058681397789e-02, 8.414709848078966159e-02}, {2.630329071327180745e+00, -8.280761675258002663e-01}, {6.310858441038185163e+00, -8.482659032501485896e+00}},
  {{2.674988286245873897e-02, -9.635581854171930416e-02}, {2.594538643258869293e+00, 1.083277913895899003e+00}, {3.595360554449531509e+00, 9.722471589044374696e+00}},
  {{9.410831331851440135e-03, 9.955619646030799963e-02}, {2.569183222650911258e+00, -1.236001717721447513e+00}, {1.870531766286728459e+00, -1.005305816132495522e+01}},
  {{1.337494143122936741e-01, -4.817790927085964792e-01}, {1.385993093869926529e+00, 7.905389825157804751e-01}, {1.294445384733117654e+00, 2.098819616884937567e+00}},
  {{4.705415665925720414e-02, 4.977809823015399981e-01}, {1.344303547103083307e+00, -9.000739808156157373e-01}, {9.568151387993929502e-01, -2.188155780310036214e+00}},
  {{4.705415665925720414e-02, -4.977809823015399981e-01}, {1.344303547103083307e+00, 9.000739808156157373e-01}, {9.568151387993929502e-01, 2.188155780310036214e+00}},
  {{9.410831331851440829e-02, 9.955619646030799963e-01}, {9.617349495709724971e-01, -7.208892581918077136e-01}, {7.502749027285335881e-01, -1.223445696699744456e+00}},
  {{9.410831331851440829e-02, -9.955619646030799963e-01}, {9.617349495709724971e-01, 7.208892581918077136e-01}, {7.502749027285335881e-01, 1.223445696699744456e+00}},
  {{1.000000000000000000e+00, 0.000000000000000000e+00}, {1.144463079806895101e+00, 0.000000000000000000e+00}, {1.636153486263258294e+00, 0.000000000000000000e+00}},
  {{1.882166266370288166e-01, -1.991123929206159993e+00}, {6.759175756150150871e-01, 5.500967608266245090e-01}, {5.775121699125205232e-01, 7.341266799259141829e-01}},
  {{2.000000000000000000e+00, 0.000000000000000000e+00}, {8.415682150707713971e-01, 0.000000000000000000e+00}, {1.033476847068688587e+00, 0.000000000000000000e+00}},
  {{1.910672978251211962e+00, 5.910404133226790924e-01}, {8.349067771186537978e-01, -1.150173778225690446e-01}, {1.011062884339774648e+00, -1.927776213839260122e-01}},
  {{3.500000000000000000e+00, 0.000000000000000000e+00}, {6.490263376886884483e-01, 0.000000000000000000e+00}, {7.364675480289124554e-01, 0.000000000000000000e+00}},
  {{3.343677711939621044e+00, 1.034320723314688495e+00}, {6.432056473780872752e-01, -9.164679090401947614e-02}, {7.230080736827643184e-01, -1.279438568998501058e-01}},
  {{2.888674652183873981e+00, -1.976248656882623633e+00}, {6.257082865554750573e-01, 1.822837059035538609e-01}, {6.837173024539993094e-01, 2.489310361497875934e-01}},
  {{4.776682445628029683e+00, 1.477601033306697786e+00}, {5.425995171398605432e-01, -7.852490788333904570e-02}, {5.903362297541407955e-01, -1.005610010573949054e-01}},
  {{4.126678074548391528e+00, -2.823212366975176746e+00}, {5.269699827240592604e-01, 1.559937186909512163e-01}, {5.612597120100293324e-01, 1.962894203805423676e-01}},
  {{2.701511529340698381e+00, 4.207354924039482746e+00}, {4.899020817830272989e-01, -2.557274871949731243e-01}, {4.965774581754393013e-01, -3.090093522702980211e-01}},
  {{6.602684919277426623e+00, -4.517139787160282971e+00}, {4.190765490788144199e-01, 1.259616358475404152e-01}, {4.361428021822884582e-01, 1.464799335928129997e-01}},
  {{4.322418446945118120e+00, 6.731767878463172039e+00}, {3.880442807589717935e-01, -2.058374751463577790e-01}, {3.909098657849196523e-01, -2.326547345564089486e-01}},
  {{2.139990628996698785e+00, -7.708465483337543667e+00}, {3.548535225036921203e-01, 2.617376973084309943e-01}, {3.458472588122909475e-01, 2.874702917905672117e-01}},
  {{5.403023058681396762e+00, 8.414709848078965493e+00}, {3.472667926531346483e-01, -1.852435355207525114e-01}, {3.492018163559967858e-01, -2.045498682663769718e-01}},
  {{2.674988286245873592e+00, -9.635581854171929805e+00}, {3.170790412446835016e-01, 2.352490994354188292e-01}, {3.104630229760768079e-01, 2.536749822694989720e-01}},
  {{9.410831331851440273e-01, 9.955619646030800851e+00}, {2.958683977057316450e-01, -2.626563088125798417e-01}, {2.846247799143592494e-01, -2.788273791454163320e-01}},
  {{3.209985943495048399e+00, -1.156269822500631506e+01}, {2.892471339642849748e-01, 2.154508032729622879e-01}, {2.841254937886110166e-01, 2.294718542669801076e-01}},
  {{1.129299759822172788e+00, 1.194674357523695996e+01}, {2.697063098186161523e-01, -2.404043764584354870e-01}, {2.610685899316964043e-01, -2.526718570596391822e-01}},
  {{1.129299759822172788e+00, -1.194674357523695996e+01}, {2.697063098186161523e-01, 2.404043764584354870e-01}, {2.610685899316964043e-01, 2.526718570596391822e-01}},
  {{1.505733013096230533e+00, 1.592899143364927994e+01}, {2.331419507146994807e-01, -2.088766832770772852e-01}, {2.274633491793252305e-01, -2.168143531890284192e-01}},
  {{1.505733013096230533e+00, -1.592899143364927994e+01}, {2.331419507146994807e-01, 2.088766832770772852e-01}, {2.274633491793252305e-01, 2.168143531890284192e-01}},
  {{1.600000000000000000e+01, 0.000000000000000000e+00}, {3.109615880249408382e-01, 0.000000000000000000e+00}, {3.205359681119734350e-01, 0.000000000000000000e+00}},
  {{2.352707832962860124e+00, -2.488904911507700035e+01}, {1.861260439835774050e-01, 1.676833041829365045e-01}, {1.831811854829734909e-01, 1.717290418466819735e-01}},
  {{2.500000000000000000e+01, 0.000000000000000000e+00}, {2.494366045755966876e-01, 0.000000000000000000e+00}, {2.543773295420852509e-01, 0.000000000000000000e+00}},
  {{2.388341222814015197e+01, 7.388005166533488932e+00}, {2.467396757415662167e-01, -3.693170398079147210e-02}, {2.512001923860341934e-01, -3.906333676590924286e-02}},
  {{5.000000000000000000e+01, 0.000000000000000000e+00}, {1.768071558574293434e-01, 0.000000000000000000e+00}, {1.785665585588155635e-01, 0.000000000000000000e+00}},
  {{4.776682445628030393e+01, 1.477601033306697786e+01}, {1.748597067594909182e-01, -2.629779113543874100e-02}, {1.764461034681545915e-01, -2.705989555790497270e-02}},
  {{4.126678074548391351e+01, -2.823212366975176835e+01}, {1.690539424652185985e-01, 5.203737439840445261e-02}, {1.701546575753652701e-01, 5.341273710507905143e-02}},
  {{1.146403786950727266e+02, 3.546242479936074687e+01}, {1.130197797499400136e-01, -1.704596465367878844e-02}, {1.134479513950370499e-01, -1.725231339408699396e-02}},
  {{9.904027378916140378e+01, -6.775709680740423835e+01}, {1.092273484548393903e-01, 3.371807911488168552e-02}, {1.095235676139835052e-01, 3.409002614891896293e-02}},
  {{6.483627670417676825e+01, 1.009765181769475788e+02}, {1.003965797387599279e-01, -5.473320501229509555e-02}, {1.004314837876900818e-01, -5.520782951167767238e-02}},
  {{4.952013689458069621e+02, -3.387854840370212059e+02}, {4.887444178883682683e-02, 1.511234597094952489e-02}, {4.890094446959052793e-02, 1.514571939729283598e-02}},
  {{3.241813835208838555e+02, 5.048825908847379083e+02}, {4.490192167655662064e-02, -2.451982094246108607e-02}, {4.490495912352226310e-02, -2.456233678172442536e-02}},
  {{1.604992971747524280e+02, -5.781349112503157812e+02}, {4.073662670830829197e-02, 3.095526716124831837e-02}, {4.072086919703306329e-02, 3.099487955712986950e-02}},
  {{5.403023058681396833e+03, 8.414709848078964569e+03}, {1.099885522573662046e-02, -6.008551786680658112e-03}, {1.099889957252858652e-02, -6.009176859900311300e-03}},
  {{2.674988286245873496e+03, -9.635581854171929081e+03}, {9.977488777441740828e-03, 7.584741244455801834e-03}, {9.977256824368426272e-03, 7.585323386168079871e-03}},
  {{9.410831331851439927e+02, 9.955619646030800141e+03}, {9.269995134228761410e-03, -8.434835691105771471e-03}, {9.269618896688102544e-03, -8.435336831426259313e-03}},
};

}  // namespace exstokes_test
