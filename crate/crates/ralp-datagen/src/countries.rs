//! Country table: name, subregion and land borders.
//!
//! Compiled from public geographic reference data. Names are lowercase
//! ASCII with underscores; border lists are treated as undirected and
//! symmetrized during generation.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subregion {
    NorthernAfrica,
    WesternAfrica,
    MiddleAfrica,
    EasternAfrica,
    SouthernAfrica,
    NorthernAmerica,
    Caribbean,
    CentralAmerica,
    SouthAmerica,
    CentralAsia,
    EasternAsia,
    SouthEasternAsia,
    SouthernAsia,
    WesternAsia,
    EasternEurope,
    NorthernEurope,
    SouthernEurope,
    WesternEurope,
    AustraliaAndNewZealand,
    Melanesia,
    Micronesia,
    Polynesia,
}

impl Subregion {
    pub const ALL: [Subregion; 22] = [
        Subregion::NorthernAfrica,
        Subregion::WesternAfrica,
        Subregion::MiddleAfrica,
        Subregion::EasternAfrica,
        Subregion::SouthernAfrica,
        Subregion::NorthernAmerica,
        Subregion::Caribbean,
        Subregion::CentralAmerica,
        Subregion::SouthAmerica,
        Subregion::CentralAsia,
        Subregion::EasternAsia,
        Subregion::SouthEasternAsia,
        Subregion::SouthernAsia,
        Subregion::WesternAsia,
        Subregion::EasternEurope,
        Subregion::NorthernEurope,
        Subregion::SouthernEurope,
        Subregion::WesternEurope,
        Subregion::AustraliaAndNewZealand,
        Subregion::Melanesia,
        Subregion::Micronesia,
        Subregion::Polynesia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subregion::NorthernAfrica => "northern_africa",
            Subregion::WesternAfrica => "western_africa",
            Subregion::MiddleAfrica => "middle_africa",
            Subregion::EasternAfrica => "eastern_africa",
            Subregion::SouthernAfrica => "southern_africa",
            Subregion::NorthernAmerica => "northern_america",
            Subregion::Caribbean => "caribbean",
            Subregion::CentralAmerica => "central_america",
            Subregion::SouthAmerica => "south_america",
            Subregion::CentralAsia => "central_asia",
            Subregion::EasternAsia => "eastern_asia",
            Subregion::SouthEasternAsia => "south_eastern_asia",
            Subregion::SouthernAsia => "southern_asia",
            Subregion::WesternAsia => "western_asia",
            Subregion::EasternEurope => "eastern_europe",
            Subregion::NorthernEurope => "northern_europe",
            Subregion::SouthernEurope => "southern_europe",
            Subregion::WesternEurope => "western_europe",
            Subregion::AustraliaAndNewZealand => "australia_and_new_zealand",
            Subregion::Melanesia => "melanesia",
            Subregion::Micronesia => "micronesia",
            Subregion::Polynesia => "polynesia",
        }
    }

    pub fn region(self) -> &'static str {
        match self {
            Subregion::NorthernAfrica
            | Subregion::WesternAfrica
            | Subregion::MiddleAfrica
            | Subregion::EasternAfrica
            | Subregion::SouthernAfrica => "africa",
            Subregion::NorthernAmerica
            | Subregion::Caribbean
            | Subregion::CentralAmerica
            | Subregion::SouthAmerica => "americas",
            Subregion::CentralAsia
            | Subregion::EasternAsia
            | Subregion::SouthEasternAsia
            | Subregion::SouthernAsia
            | Subregion::WesternAsia => "asia",
            Subregion::EasternEurope
            | Subregion::NorthernEurope
            | Subregion::SouthernEurope
            | Subregion::WesternEurope => "europe",
            Subregion::AustraliaAndNewZealand
            | Subregion::Melanesia
            | Subregion::Micronesia
            | Subregion::Polynesia => "oceania",
        }
    }
}

pub struct Country {
    pub name: &'static str,
    pub subregion: Subregion,
    pub borders: &'static [&'static str],
}

macro_rules! country {
    ($name:literal, $sub:ident, [$($b:literal),*]) => {
        Country { name: $name, subregion: Subregion::$sub, borders: &[$($b),*] }
    };
}

pub const COUNTRIES: &[Country] = &[
    // --- Africa: northern ---
    country!("algeria", NorthernAfrica, ["tunisia", "libya", "niger", "morocco", "mauritania", "mali", "western_sahara"]),
    country!("egypt", NorthernAfrica, ["libya", "sudan", "israel", "palestine"]),
    country!("libya", NorthernAfrica, ["algeria", "chad", "egypt", "niger", "sudan", "tunisia"]),
    country!("morocco", NorthernAfrica, ["algeria", "western_sahara", "spain"]),
    country!("sudan", NorthernAfrica, ["central_african_republic", "chad", "egypt", "eritrea", "ethiopia", "libya", "south_sudan"]),
    country!("tunisia", NorthernAfrica, ["algeria", "libya"]),
    country!("western_sahara", NorthernAfrica, ["algeria", "mauritania", "morocco"]),
    // --- Africa: western ---
    country!("benin", WesternAfrica, ["burkina_faso", "niger", "nigeria", "togo"]),
    country!("burkina_faso", WesternAfrica, ["benin", "ivory_coast", "ghana", "mali", "niger", "togo"]),
    country!("cape_verde", WesternAfrica, []),
    country!("gambia", WesternAfrica, ["senegal"]),
    country!("ghana", WesternAfrica, ["burkina_faso", "ivory_coast", "togo"]),
    country!("guinea", WesternAfrica, ["guinea_bissau", "ivory_coast", "liberia", "mali", "senegal", "sierra_leone"]),
    country!("guinea_bissau", WesternAfrica, ["guinea", "senegal"]),
    country!("ivory_coast", WesternAfrica, ["burkina_faso", "ghana", "guinea", "liberia", "mali"]),
    country!("liberia", WesternAfrica, ["guinea", "ivory_coast", "sierra_leone"]),
    country!("mali", WesternAfrica, ["algeria", "burkina_faso", "guinea", "ivory_coast", "mauritania", "niger", "senegal"]),
    country!("mauritania", WesternAfrica, ["algeria", "mali", "senegal", "western_sahara"]),
    country!("niger", WesternAfrica, ["algeria", "benin", "burkina_faso", "chad", "libya", "mali", "nigeria"]),
    country!("nigeria", WesternAfrica, ["benin", "cameroon", "chad", "niger"]),
    country!("senegal", WesternAfrica, ["gambia", "guinea", "guinea_bissau", "mali", "mauritania"]),
    country!("sierra_leone", WesternAfrica, ["guinea", "liberia"]),
    country!("togo", WesternAfrica, ["benin", "burkina_faso", "ghana"]),
    // --- Africa: middle ---
    country!("angola", MiddleAfrica, ["republic_of_the_congo", "democratic_republic_of_the_congo", "namibia", "zambia"]),
    country!("cameroon", MiddleAfrica, ["central_african_republic", "chad", "republic_of_the_congo", "equatorial_guinea", "gabon", "nigeria"]),
    country!("central_african_republic", MiddleAfrica, ["cameroon", "chad", "democratic_republic_of_the_congo", "republic_of_the_congo", "south_sudan", "sudan"]),
    country!("chad", MiddleAfrica, ["cameroon", "central_african_republic", "libya", "niger", "nigeria", "sudan"]),
    country!("republic_of_the_congo", MiddleAfrica, ["angola", "cameroon", "central_african_republic", "democratic_republic_of_the_congo", "gabon"]),
    country!("democratic_republic_of_the_congo", MiddleAfrica, ["angola", "burundi", "central_african_republic", "republic_of_the_congo", "rwanda", "south_sudan", "tanzania", "uganda", "zambia"]),
    country!("equatorial_guinea", MiddleAfrica, ["cameroon", "gabon"]),
    country!("gabon", MiddleAfrica, ["cameroon", "republic_of_the_congo", "equatorial_guinea"]),
    country!("sao_tome_and_principe", MiddleAfrica, []),
    // --- Africa: eastern ---
    country!("burundi", EasternAfrica, ["democratic_republic_of_the_congo", "rwanda", "tanzania"]),
    country!("comoros", EasternAfrica, []),
    country!("djibouti", EasternAfrica, ["eritrea", "ethiopia", "somalia"]),
    country!("eritrea", EasternAfrica, ["djibouti", "ethiopia", "sudan"]),
    country!("ethiopia", EasternAfrica, ["djibouti", "eritrea", "kenya", "somalia", "south_sudan", "sudan"]),
    country!("kenya", EasternAfrica, ["ethiopia", "somalia", "south_sudan", "tanzania", "uganda"]),
    country!("madagascar", EasternAfrica, []),
    country!("malawi", EasternAfrica, ["mozambique", "tanzania", "zambia"]),
    country!("mauritius", EasternAfrica, []),
    country!("mozambique", EasternAfrica, ["malawi", "south_africa", "swaziland", "tanzania", "zambia", "zimbabwe"]),
    country!("rwanda", EasternAfrica, ["burundi", "democratic_republic_of_the_congo", "tanzania", "uganda"]),
    country!("seychelles", EasternAfrica, []),
    country!("somalia", EasternAfrica, ["djibouti", "ethiopia", "kenya"]),
    country!("south_sudan", EasternAfrica, ["central_african_republic", "democratic_republic_of_the_congo", "ethiopia", "kenya", "sudan", "uganda"]),
    country!("tanzania", EasternAfrica, ["burundi", "democratic_republic_of_the_congo", "kenya", "malawi", "mozambique", "rwanda", "uganda", "zambia"]),
    country!("uganda", EasternAfrica, ["democratic_republic_of_the_congo", "kenya", "rwanda", "south_sudan", "tanzania"]),
    country!("zambia", EasternAfrica, ["angola", "botswana", "democratic_republic_of_the_congo", "malawi", "mozambique", "namibia", "tanzania", "zimbabwe"]),
    country!("zimbabwe", EasternAfrica, ["botswana", "mozambique", "south_africa", "zambia"]),
    // --- Africa: southern ---
    country!("botswana", SouthernAfrica, ["namibia", "south_africa", "zambia", "zimbabwe"]),
    country!("lesotho", SouthernAfrica, ["south_africa"]),
    country!("namibia", SouthernAfrica, ["angola", "botswana", "south_africa", "zambia"]),
    country!("south_africa", SouthernAfrica, ["botswana", "lesotho", "mozambique", "namibia", "swaziland", "zimbabwe"]),
    country!("swaziland", SouthernAfrica, ["mozambique", "south_africa"]),
    // --- Africa: island territories ---
    country!("mayotte", EasternAfrica, []),
    country!("reunion", EasternAfrica, []),
    country!("saint_helena", WesternAfrica, []),
    // --- Americas: northern ---
    country!("bermuda", NorthernAmerica, []),
    country!("canada", NorthernAmerica, ["united_states"]),
    country!("greenland", NorthernAmerica, []),
    country!("saint_pierre_and_miquelon", NorthernAmerica, []),
    country!("united_states", NorthernAmerica, ["canada", "mexico"]),
    // --- Americas: caribbean ---
    country!("anguilla", Caribbean, []),
    country!("antigua_and_barbuda", Caribbean, []),
    country!("aruba", Caribbean, []),
    country!("bahamas", Caribbean, []),
    country!("barbados", Caribbean, []),
    country!("british_virgin_islands", Caribbean, []),
    country!("cayman_islands", Caribbean, []),
    country!("cuba", Caribbean, []),
    country!("curacao", Caribbean, []),
    country!("dominica", Caribbean, []),
    country!("dominican_republic", Caribbean, ["haiti"]),
    country!("grenada", Caribbean, []),
    country!("guadeloupe", Caribbean, []),
    country!("haiti", Caribbean, ["dominican_republic"]),
    country!("jamaica", Caribbean, []),
    country!("martinique", Caribbean, []),
    country!("montserrat", Caribbean, []),
    country!("puerto_rico", Caribbean, []),
    country!("saint_barthelemy", Caribbean, []),
    country!("saint_kitts_and_nevis", Caribbean, []),
    country!("saint_lucia", Caribbean, []),
    country!("saint_martin", Caribbean, ["sint_maarten"]),
    country!("saint_vincent_and_the_grenadines", Caribbean, []),
    country!("sint_maarten", Caribbean, ["saint_martin"]),
    country!("trinidad_and_tobago", Caribbean, []),
    country!("turks_and_caicos_islands", Caribbean, []),
    country!("united_states_virgin_islands", Caribbean, []),
    // --- Americas: central ---
    country!("belize", CentralAmerica, ["guatemala", "mexico"]),
    country!("costa_rica", CentralAmerica, ["nicaragua", "panama"]),
    country!("el_salvador", CentralAmerica, ["guatemala", "honduras"]),
    country!("guatemala", CentralAmerica, ["belize", "el_salvador", "honduras", "mexico"]),
    country!("honduras", CentralAmerica, ["el_salvador", "guatemala", "nicaragua"]),
    country!("mexico", CentralAmerica, ["belize", "guatemala", "united_states"]),
    country!("nicaragua", CentralAmerica, ["costa_rica", "honduras"]),
    country!("panama", CentralAmerica, ["colombia", "costa_rica"]),
    // --- Americas: south ---
    country!("argentina", SouthAmerica, ["bolivia", "brazil", "chile", "paraguay", "uruguay"]),
    country!("bolivia", SouthAmerica, ["argentina", "brazil", "chile", "paraguay", "peru"]),
    country!("brazil", SouthAmerica, ["argentina", "bolivia", "colombia", "french_guiana", "guyana", "paraguay", "peru", "suriname", "uruguay", "venezuela"]),
    country!("chile", SouthAmerica, ["argentina", "bolivia", "peru"]),
    country!("colombia", SouthAmerica, ["brazil", "ecuador", "panama", "peru", "venezuela"]),
    country!("ecuador", SouthAmerica, ["colombia", "peru"]),
    country!("falkland_islands", SouthAmerica, []),
    country!("french_guiana", SouthAmerica, ["brazil", "suriname"]),
    country!("guyana", SouthAmerica, ["brazil", "suriname", "venezuela"]),
    country!("paraguay", SouthAmerica, ["argentina", "bolivia", "brazil"]),
    country!("peru", SouthAmerica, ["bolivia", "brazil", "chile", "colombia", "ecuador"]),
    country!("suriname", SouthAmerica, ["brazil", "french_guiana", "guyana"]),
    country!("uruguay", SouthAmerica, ["argentina", "brazil"]),
    country!("venezuela", SouthAmerica, ["brazil", "colombia", "guyana"]),
    // --- Asia: central ---
    country!("kazakhstan", CentralAsia, ["china", "kyrgyzstan", "russia", "turkmenistan", "uzbekistan"]),
    country!("kyrgyzstan", CentralAsia, ["china", "kazakhstan", "tajikistan", "uzbekistan"]),
    country!("tajikistan", CentralAsia, ["afghanistan", "china", "kyrgyzstan", "uzbekistan"]),
    country!("turkmenistan", CentralAsia, ["afghanistan", "iran", "kazakhstan", "uzbekistan"]),
    country!("uzbekistan", CentralAsia, ["afghanistan", "kazakhstan", "kyrgyzstan", "tajikistan", "turkmenistan"]),
    // --- Asia: eastern ---
    country!("china", EasternAsia, ["afghanistan", "bhutan", "india", "kazakhstan", "kyrgyzstan", "laos", "mongolia", "myanmar", "nepal", "north_korea", "pakistan", "russia", "tajikistan", "vietnam", "hong_kong", "macau"]),
    country!("hong_kong", EasternAsia, ["china"]),
    country!("japan", EasternAsia, []),
    country!("macau", EasternAsia, ["china"]),
    country!("mongolia", EasternAsia, ["china", "russia"]),
    country!("north_korea", EasternAsia, ["china", "south_korea", "russia"]),
    country!("south_korea", EasternAsia, ["north_korea"]),
    country!("taiwan", EasternAsia, []),
    // --- Asia: south-eastern ---
    country!("brunei", SouthEasternAsia, ["malaysia"]),
    country!("cambodia", SouthEasternAsia, ["laos", "thailand", "vietnam"]),
    country!("indonesia", SouthEasternAsia, ["timor_leste", "malaysia", "papua_new_guinea"]),
    country!("laos", SouthEasternAsia, ["cambodia", "china", "myanmar", "thailand", "vietnam"]),
    country!("malaysia", SouthEasternAsia, ["brunei", "indonesia", "thailand"]),
    country!("myanmar", SouthEasternAsia, ["bangladesh", "china", "india", "laos", "thailand"]),
    country!("philippines", SouthEasternAsia, []),
    country!("singapore", SouthEasternAsia, []),
    country!("thailand", SouthEasternAsia, ["cambodia", "laos", "malaysia", "myanmar"]),
    country!("timor_leste", SouthEasternAsia, ["indonesia"]),
    country!("vietnam", SouthEasternAsia, ["cambodia", "china", "laos"]),
    // --- Asia: southern ---
    country!("afghanistan", SouthernAsia, ["china", "iran", "pakistan", "tajikistan", "turkmenistan", "uzbekistan"]),
    country!("bangladesh", SouthernAsia, ["india", "myanmar"]),
    country!("bhutan", SouthernAsia, ["china", "india"]),
    country!("india", SouthernAsia, ["bangladesh", "bhutan", "china", "myanmar", "nepal", "pakistan"]),
    country!("iran", SouthernAsia, ["afghanistan", "armenia", "azerbaijan", "iraq", "pakistan", "turkey", "turkmenistan"]),
    country!("maldives", SouthernAsia, []),
    country!("nepal", SouthernAsia, ["china", "india"]),
    country!("pakistan", SouthernAsia, ["afghanistan", "china", "india", "iran"]),
    country!("sri_lanka", SouthernAsia, []),
    // --- Asia: western ---
    country!("armenia", WesternAsia, ["azerbaijan", "georgia", "iran", "turkey"]),
    country!("azerbaijan", WesternAsia, ["armenia", "georgia", "iran", "russia", "turkey"]),
    country!("bahrain", WesternAsia, []),
    country!("cyprus", WesternAsia, []),
    country!("georgia", WesternAsia, ["armenia", "azerbaijan", "russia", "turkey"]),
    country!("iraq", WesternAsia, ["iran", "jordan", "kuwait", "saudi_arabia", "syria", "turkey"]),
    country!("israel", WesternAsia, ["egypt", "jordan", "lebanon", "palestine", "syria"]),
    country!("jordan", WesternAsia, ["iraq", "israel", "palestine", "saudi_arabia", "syria"]),
    country!("kuwait", WesternAsia, ["iraq", "saudi_arabia"]),
    country!("lebanon", WesternAsia, ["israel", "syria"]),
    country!("oman", WesternAsia, ["saudi_arabia", "united_arab_emirates", "yemen"]),
    country!("palestine", WesternAsia, ["egypt", "israel", "jordan"]),
    country!("qatar", WesternAsia, ["saudi_arabia"]),
    country!("saudi_arabia", WesternAsia, ["iraq", "jordan", "kuwait", "oman", "qatar", "united_arab_emirates", "yemen"]),
    country!("syria", WesternAsia, ["iraq", "israel", "jordan", "lebanon", "turkey"]),
    country!("turkey", WesternAsia, ["armenia", "azerbaijan", "bulgaria", "georgia", "greece", "iran", "iraq", "syria"]),
    country!("united_arab_emirates", WesternAsia, ["oman", "saudi_arabia"]),
    country!("yemen", WesternAsia, ["oman", "saudi_arabia"]),
    // --- Europe: eastern ---
    country!("belarus", EasternEurope, ["latvia", "lithuania", "poland", "russia", "ukraine"]),
    country!("bulgaria", EasternEurope, ["greece", "macedonia", "romania", "serbia", "turkey"]),
    country!("czech_republic", EasternEurope, ["austria", "germany", "poland", "slovakia"]),
    country!("hungary", EasternEurope, ["austria", "croatia", "romania", "serbia", "slovakia", "slovenia", "ukraine"]),
    country!("moldova", EasternEurope, ["romania", "ukraine"]),
    country!("poland", EasternEurope, ["belarus", "czech_republic", "germany", "lithuania", "russia", "slovakia", "ukraine"]),
    country!("romania", EasternEurope, ["bulgaria", "hungary", "moldova", "serbia", "ukraine"]),
    country!("russia", EasternEurope, ["azerbaijan", "belarus", "china", "estonia", "finland", "georgia", "kazakhstan", "north_korea", "latvia", "lithuania", "mongolia", "norway", "poland", "ukraine"]),
    country!("slovakia", EasternEurope, ["austria", "czech_republic", "hungary", "poland", "ukraine"]),
    country!("ukraine", EasternEurope, ["belarus", "hungary", "moldova", "poland", "romania", "russia", "slovakia"]),
    // --- Europe: northern ---
    country!("aland_islands", NorthernEurope, []),
    country!("denmark", NorthernEurope, ["germany"]),
    country!("estonia", NorthernEurope, ["latvia", "russia"]),
    country!("faroe_islands", NorthernEurope, []),
    country!("finland", NorthernEurope, ["norway", "sweden", "russia"]),
    country!("guernsey", NorthernEurope, []),
    country!("iceland", NorthernEurope, []),
    country!("ireland", NorthernEurope, ["united_kingdom"]),
    country!("isle_of_man", NorthernEurope, []),
    country!("jersey", NorthernEurope, []),
    country!("latvia", NorthernEurope, ["belarus", "estonia", "lithuania", "russia"]),
    country!("lithuania", NorthernEurope, ["belarus", "latvia", "poland", "russia"]),
    country!("norway", NorthernEurope, ["finland", "sweden", "russia"]),
    country!("sweden", NorthernEurope, ["finland", "norway"]),
    country!("united_kingdom", NorthernEurope, ["ireland"]),
    // --- Europe: southern ---
    country!("albania", SouthernEurope, ["greece", "macedonia", "montenegro", "kosovo"]),
    country!("andorra", SouthernEurope, ["france", "spain"]),
    country!("bosnia_and_herzegovina", SouthernEurope, ["croatia", "montenegro", "serbia"]),
    country!("croatia", SouthernEurope, ["bosnia_and_herzegovina", "hungary", "montenegro", "serbia", "slovenia"]),
    country!("gibraltar", SouthernEurope, ["spain"]),
    country!("greece", SouthernEurope, ["albania", "bulgaria", "macedonia", "turkey"]),
    country!("italy", SouthernEurope, ["austria", "france", "san_marino", "slovenia", "switzerland", "vatican_city"]),
    country!("kosovo", SouthernEurope, ["albania", "macedonia", "montenegro", "serbia"]),
    country!("macedonia", SouthernEurope, ["albania", "bulgaria", "greece", "kosovo", "serbia"]),
    country!("malta", SouthernEurope, []),
    country!("montenegro", SouthernEurope, ["albania", "bosnia_and_herzegovina", "croatia", "kosovo", "serbia"]),
    country!("portugal", SouthernEurope, ["spain"]),
    country!("san_marino", SouthernEurope, ["italy"]),
    country!("serbia", SouthernEurope, ["bosnia_and_herzegovina", "bulgaria", "croatia", "hungary", "kosovo", "macedonia", "montenegro", "romania"]),
    country!("slovenia", SouthernEurope, ["austria", "croatia", "hungary", "italy"]),
    country!("spain", SouthernEurope, ["andorra", "france", "gibraltar", "morocco", "portugal"]),
    country!("vatican_city", SouthernEurope, ["italy"]),
    // --- Europe: western ---
    country!("austria", WesternEurope, ["czech_republic", "germany", "hungary", "italy", "liechtenstein", "slovakia", "slovenia", "switzerland"]),
    country!("belgium", WesternEurope, ["france", "germany", "luxembourg", "netherlands"]),
    country!("france", WesternEurope, ["andorra", "belgium", "germany", "italy", "luxembourg", "monaco", "spain", "switzerland"]),
    country!("germany", WesternEurope, ["austria", "belgium", "czech_republic", "denmark", "france", "luxembourg", "netherlands", "poland", "switzerland"]),
    country!("liechtenstein", WesternEurope, ["austria", "switzerland"]),
    country!("luxembourg", WesternEurope, ["belgium", "france", "germany"]),
    country!("monaco", WesternEurope, ["france"]),
    country!("netherlands", WesternEurope, ["belgium", "germany"]),
    country!("switzerland", WesternEurope, ["austria", "france", "germany", "italy", "liechtenstein"]),
    // --- Oceania ---
    country!("australia", AustraliaAndNewZealand, []),
    country!("christmas_island", AustraliaAndNewZealand, []),
    country!("cocos_islands", AustraliaAndNewZealand, []),
    country!("new_zealand", AustraliaAndNewZealand, []),
    country!("norfolk_island", AustraliaAndNewZealand, []),
    country!("fiji", Melanesia, []),
    country!("new_caledonia", Melanesia, []),
    country!("papua_new_guinea", Melanesia, ["indonesia"]),
    country!("solomon_islands", Melanesia, []),
    country!("vanuatu", Melanesia, []),
    country!("guam", Micronesia, []),
    country!("kiribati", Micronesia, []),
    country!("marshall_islands", Micronesia, []),
    country!("micronesia", Micronesia, []),
    country!("nauru", Micronesia, []),
    country!("northern_mariana_islands", Micronesia, []),
    country!("palau", Micronesia, []),
    country!("american_samoa", Polynesia, []),
    country!("cook_islands", Polynesia, []),
    country!("french_polynesia", Polynesia, []),
    country!("niue", Polynesia, []),
    country!("pitcairn_islands", Polynesia, []),
    country!("samoa", Polynesia, []),
    country!("tokelau", Polynesia, []),
    country!("tonga", Polynesia, []),
    country!("tuvalu", Polynesia, []),
    country!("wallis_and_futuna", Polynesia, []),
];
