// Generated with mpmath at 40 significant digits.
const REF_0: &[(C64, C64, C64)] = &[
    (c(0.5, 0.0), c(0.9384698072408129, 0.0), c(-0.44451873350670656, 0.0)),
    (c(1.0, 0.0), c(0.7651976865579666, 0.0), c(0.08825696421567696, 0.0)),
    (c(2.404825557695773, 0.0), c(-6.10876525973673e-17, 0.0), c(0.509924383448479, 0.0)),
    (c(5.0, 0.0), c(-0.1775967713143383, 0.0), c(-0.30851762524903376, 0.0)),
    (c(7.9, 0.0), c(0.19436184484127825, 0.0), c(0.20652094814437577, 0.0)),
    (c(8.1, 0.0), c(0.14751745404437766, 0.0), c(0.23809132870223482, 0.0)),
    (c(10.0, 0.0), c(-0.24593576445134835, 0.0), c(0.055671167283599395, 0.0)),
    (c(12.0, 0.0), c(0.047689310796833535, 0.0), c(-0.22523731263436145, 0.0)),
    (c(15.0, 0.0), c(-0.014224472826780772, 0.0), c(0.20546429603891828, 0.0)),
    (c(20.0, 0.0), c(0.16702466434058316, 0.0), c(0.06264059680938383, 0.0)),
    (c(24.9, 0.0), c(0.0832459683530155, 0.0), c(-0.13649918399676522, 0.0)),
    (c(25.1, 0.0), c(0.10827567149994945, 0.0), c(-0.11676770763803694, 0.0)),
    (c(30.0, 0.0), c(-0.08636798358104021, 0.0), c(-0.11729573168666403, 0.0)),
    (c(50.0, 0.0), c(0.055812327669251816, 0.0), c(-0.09806499547007708, 0.0)),
    (c(100.0, 0.0), c(0.019985850304223122, 0.0), c(-0.07724431336508315, 0.0)),
    (c(150.0, 0.0), c(-0.0007740903753942912, 0.0), c(-0.06514222150903735, 0.0)),
    (c(199.0, 0.0), c(-0.05413952859838656, 0.0), c(-0.016370573575285933, 1.6653141449273023e-69)),
    (c(3.0, -0.5), c(-0.30753601797880276, 0.17324844577780657), c(0.4107107426425238, 0.17028150550830334)),
    (c(10.0, -2.0), c(-0.9337023760064327, 0.10876423059733811), c(0.11938967219038121, 0.9017053395021106)),
    (c(15.0, -1.0), c(-0.029957357573290638, 0.24050570314809552), c(0.316098704290817, 0.027241714457338292)),
    (c(20.0, 3.0), c(1.6225953170176561, -0.747529945525452), c(0.7500069853957425, 1.6141261159290523)),
    (c(0.1, 0.1), c(0.999993750001085, -0.004999996527777995), c(-1.316525682144177, 0.5097751646933995)),
    (c(5.0, 5.0), c(-2.6759430047390844, 22.38204884667717), c(-22.383287175949576, -2.674376535135113)),
    (c(30.0, -4.0), c(-2.1329592493539473, -3.337385417216036), c(-3.3394143768296063, 2.1312472325599456)),
    (c(12.0, -8.0), c(152.3606076678312, -275.2601431924448), c(-275.2602130929154, -152.36061340646114)),
    (c(0.0, 2.0), c(2.2795853023360673, 0.0), c(-0.07250709134387025, 2.2795853023360673)),
    (c(-3.0, 1.0), c(-0.46049214388225845, 0.3695650000148636), c(-0.22325478042355687, -0.5310974929241096)),
    (c(18.0, -6.0), c(3.340923083948891, -36.86923627731095), c(-36.86967726490895, -3.341026884605821)),
    (c(40.0, -10.0), c(-87.89309371486084, 1366.63114914395), c(1366.6311546891736, 87.89309472804142)),
    (c(-30.0, -2.0), c(-0.3103304708044252, 0.4356371925609), c(0.4201817735271057, 0.3225235841833772)),
    (c(7.0, -3.0), c(2.906404755600374, 0.3459854230067621), c(0.34196257034738314, -2.8926894742326255)),
];
const REF_1: &[(C64, C64, C64)] = &[
    (c(0.5, 0.0), c(0.2422684576748739, 0.0), c(-1.471472392670243, 0.0)),
    (c(1.0, 0.0), c(0.4400505857449335, 0.0), c(-0.7812128213002887, 0.0)),
    (c(2.404825557695773, 0.0), c(0.5191474972894667, 0.0), c(0.1027466824382596, 0.0)),
    (c(5.0, 0.0), c(-0.32757913759146523, 0.0), c(0.14786314339122683, 0.0)),
    (c(7.9, 0.0), c(0.2191793999217512, 0.0), c(-0.18172107728057313, 0.0)),
    (c(8.1, 0.0), c(0.24760776698159287, 0.0), c(-0.13314879595249593, 0.0)),
    (c(10.0, 0.0), c(0.04347274616886144, 0.0), c(0.24901542420695388, 0.0)),
    (c(12.0, 0.0), c(-0.2234471044906276, 0.0), c(-0.05709921826089652, 0.0)),
    (c(15.0, 0.0), c(0.20510403861352275, 0.0), c(0.02107362803687351, 0.0)),
    (c(20.0, 0.0), c(0.06683312417585005, 0.0), c(-0.1655116143625213, 0.0)),
    (c(24.9, 0.0), c(-0.13485569953140886, 0.0), c(-0.08600255759555425, 0.0)),
    (c(25.1, 0.0), c(-0.11463478413442257, 0.0), c(-0.11062223322783099, 0.0)),
    (c(30.0, 0.0), c(-0.11875106261662294, 0.0), c(0.08442557066174723, 0.0)),
    (c(50.0, 0.0), c(-0.09751182812517514, 0.0), c(-0.05679566856201477, 0.0)),
    (c(100.0, 0.0), c(-0.07714535201411216, 0.0), c(-0.020372312002759792, 0.0)),
    (c(150.0, 0.0), c(-0.06514516365772736, 0.0), c(0.00055695634956084, 0.0)),
    (c(199.0, 0.0), c(-0.01650665335438384, 0.0), c(0.0540985676475402, 5.178086169383331e-69)),
    (c(3.0, -0.5), c(0.3614967984040317, 0.19336161497912513), c(0.37260837346001696, -0.136589563258956)),
    (c(10.0, -2.0), c(0.07327564051642578, 0.8990478561697511), c(0.9318906825221435, -0.0640578900323617)),
    (c(15.0, -1.0), c(0.3147454050948523, 0.03518621464673067), c(0.040409776889169, -0.23903436213067097)),
    (c(20.0, 3.0), c(0.7872826502073456, 1.5903221371824245), c(-1.5987645014077347, 0.7845896181993096)),
    (c(0.1, 0.1), c(0.050124895789941414, 0.04987489587674696), c(-3.2901679025116497, 3.1265584204268295)),
    (c(5.0, 5.0), c(-21.412874162535427, -1.3614108123356676), c(1.362996195143459, -21.411499364996768)),
    (c(30.0, -4.0), c(-3.3675679074605287, 2.072117384656053), c(2.073800217023594, 3.365506287425884)),
    (c(12.0, -8.0), c(-265.56226594753133, -157.5665245713441), c(-157.56652069957167, 265.5621945268826)),
    (c(0.0, 2.0), c(0.0, 1.590636854637329), c(-1.590636854637329, 0.08904138584402554)),
    (c(-3.0, 1.0), c(-0.43261563940523967, -0.42950578688424357), c(0.3341505213215265, -0.5772561920555603)),
    (c(18.0, -6.0), c(-36.489028593540034, -4.243137517261887), c(-4.243043753206494, 36.488581242844184)),
    (c(40.0, -10.0), c(1361.6649386842598, 103.76380843520026), c(103.76380748401428, -1361.6649331104904)),
    (c(-30.0, -2.0), c(0.4558261747778996, 0.2906003565188161), c(0.2786481963531746, -0.47150283267088083)),
    (c(7.0, -3.0), c(0.513050995397813, -2.801196351625501), c(-2.8155195466261684, -0.51637728822243)),
];
const REF_N: &[(i32, C64, C64, C64)] = &[
    (2, c(1.3, 0.0), c(0.18302669876873764, 0.0), c(-1.1304118648283024, 0.0)),
    (2, c(6.7, 0.0), c(-0.3135250714542734, 0.0), c(0.02829284033713354, 0.0)),
    (2, c(15.2, 0.0), c(0.08015045945798914, 0.0), c(-0.18921046191124613, 0.0)),
    (2, c(9.0, -1.5), c(0.3638628206974202, -0.4334878875018693), c(-0.4882260718444578, -0.33559835423816375)),
    (2, c(30.0, 0.0), c(0.07845124607326535, 0.0), c(0.12292410306411385, 0.0)),
    (2, c(2.0, 0.5), c(0.3670632924932075, 0.11702337456576963), c(-0.5918808177184265, 0.23875806296683802)),
    (2, c(60.0, 0.0), c(0.09302508354766742, 0.0), c(-0.044296631897120506, 0.0)),
    (5, c(1.3, 0.0), c(0.000900841357681507, 0.0), c(-73.32352850445308, 0.0)),
    (5, c(6.7, 0.0), c(0.36799578234488906, 0.0), c(-0.012211984795453957, 0.0)),
    (5, c(15.2, 0.0), c(0.09602501572061427, 0.0), c(0.1873041398612249, 0.0)),
    (5, c(9.0, -1.5), c(-0.13330328566384703, 0.4487029595033948), c(0.5292619800876164, 0.13038175855260836)),
    (5, c(30.0, 0.0), c(-0.14324029551207706, 0.0), c(0.03162735928926443, 0.0)),
    (5, c(2.0, 0.5), c(0.0034621099584312316, 0.007525812900968153), c(-3.8853894055898377, 7.3959782762322055)),
    (5, c(60.0, 0.0), c(0.0274547442283441, 0.0), c(0.09946463284045089, 0.0)),
    (10, c(1.3, 0.0), c(3.5699561025730007e-09, 0.0), c(-8993477.816091731, 0.0)),
    (10, c(6.7, 0.0), c(0.01684510422742749, 0.0), c(-2.593091682383852, 0.0)),
    (10, c(15.2, 0.0), c(-0.12073964209702821, 0.0), c(0.2016015934339757, 0.0)),
    (10, c(9.0, -1.5), c(0.09616018498679246, -0.12417170519368592), c(-0.41675550302616765, -0.24054764595070197)),
    (10, c(30.0, 0.0), c(-0.12987689399858876, 0.0), c(0.07505670212239711, 0.0)),
    (10, c(2.0, 0.5), c(-2.535479904301211e-07, 2.303927105944484e-07), c(69424.15302983654, 64430.008505944854)),
    (10, c(60.0, 0.0), c(0.09717714332807109, 0.0), c(0.036290350559545506, 0.0)),
    (17, c(1.3, 0.0), c(1.81241807489634e-18, 0.0), c(-1.0361457896879378e+16, 0.0)),
    (17, c(6.7, 0.0), c(1.2568524926018354e-06, 0.0), c(-16217.24973403991, 0.0)),
    (17, c(15.2, 0.0), c(0.07500623854554626, 0.0), c(-0.5660535767494472, 0.0)),
    (17, c(9.0, -1.5), c(-0.00010912808882673688, -9.829800484387283e-05), c(104.02169321076714, -106.68720994156664)),
    (17, c(30.0, 0.0), c(0.061244320372209435, 0.0), c(0.14825137152090304, 0.0)),
    (17, c(2.0, 0.5), c(-2.4319721045626334e-15, -3.7478015529275815e-15), c(2308740141761.8594, -3530625506814.361)),
    (17, c(60.0, 0.0), c(-0.09783686937644301, 0.0), c(-0.03861345627671517, 0.0)),
];
