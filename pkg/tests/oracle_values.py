"""Reference values from tools/oracles.py (mpmath built-ins only)."""

CONSTANTS = {
    'pi': '3.1415926535897932384626433832795028841971693993751',
    'G': '0.91596559417721901505460351493238411077414937428167',
    'zeta3': '1.2020569031595942853997381615114499907649862923405',
    'ln2': '0.69314718055994530941723212145817656807550013436026',
}

POLYGAMMA = {
    (0, '1'): '-0.57721566490153286060651209008240243104215933593992',
    (1, '1/2'): '4.9348022005446793094172454999380755676568497036204',
    (2, '1/3'): '-55.12212239940160755245575595481501856908419062603',
    (3, '7/4'): '0.80034957188763679729111622728376026427656115434077',
    (1, '123/10'): '0.084695170245916407292686725641127376717167919494483',
}

# x -> {id: (lhs, companion, t)}
SIDES = {
    '1/10': {
        'ejem': ('0.28873006977670889595232547338123426662043967931136', '-0.045960751147129325442619640136724074932751539362026', '0.33469082092383822139494511351795834155319121867338'),
        'old': ('0.26504409765571881252172215136679351237118008687595', '-0.086870657344991707163107831561742709752436486545907', '0.35191475500071051968482998292853622212361657342186'),
        'iden1': ('0.29773155264324297528850305612958442850612151565684', '0.013026535276372151897797985568063202491899506116875', '0.28470501736687082339070507056152122601422200953997'),
        'iden2': ('0.26504409765571881252172215136679351237118008687595', '0.047548817922687685425141993172287282466352641217878', '0.21749527973303112709658015819450622990482744565807'),
        'iden3': ('0.29085293923482963610919106795534458392954956527217', '0.02008237724614227411787097634525843518189537514412', '0.27077056198868736199132009161008614874765419012805'),
        'iden4': ('0.30800560178004060020978230753091652287914060906331', '0.0086490309676761095816482063619620215041703923277873', '0.29935657081236449062813410116895450137497021673552'),
        'idenpi2-quartic': ('0.092939877936014478991517291065793207006435253734454', '-0.0027348696653113324799511963828109857790270472712833', '0.095674747601325811471468487448604192785462301005737'),
        'idenpi2-cubic': ('0.098348408853264006404599396399649286000758692357353', '-0.00044761182541225845467103274209752171188555673120997', '0.098796020678676264859270429141746807712644249088563'),
    },
    '-1/10': {
        'ejem': ('0.23484522602193038435823471003983620124758383332494', '-0.099845594901907837036710403478122140305607385348446', '0.33469082092383822139494511351795834155319121867338'),
        'old': ('0.1307646549679007241258824346497464956945025079557', '-0.22115010003280979555894754827878972642911406546616', '0.35191475500071051968482998292853622212361657342186'),
        'iden1': ('0.26522416143140752838229700413384615495522119294168', '-0.019480855935463295008408066427675071059000816598284', '0.28470501736687082339070507056152122601422200953997'),
        'iden2': ('0.1307646549679007241258824346497464956945025079557', '-0.086730624765130402970697723544759734210324937702377', '0.21749527973303112709658015819450622990482744565807'),
        'iden3': ('0.21786416689476666123593038808822587064728717069731', '-0.052906395093920700755389703521860278100367019430732', '0.27077056198868736199132009161008614874765419012805'),
        'iden4': ('0.29172590110988359563459255388945253395394153341311', '-0.0076306697024808949935415472795019674210286833224065', '0.29935657081236449062813410116895450137497021673552'),
        'idenpi2-quartic': ('0.10017977246817822628733976439485060957334473649251', '0.0045050248668524148158712769462464167878824354867751', '0.095674747601325811471468487448604192785462301005737'),
        'idenpi2-cubic': ('0.099447825347449277091263015702594634961201517765603', '0.00065180466877301223199258656084782724855726867703929', '0.098796020678676264859270429141746807712644249088563'),
    },
}

HARMONICIDEN = '-2.6476272018318191207574771854159722917922769847559'
