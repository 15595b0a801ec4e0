#include "globsci/countries.hpp"

#include "globsci/csv.hpp"
#include "globsci/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>

namespace globsci {

namespace {

struct CountryRow {
    const char* code;
    const char* name;
};

struct GroupRow {
    const char* code;
    CountryGroup group;
};

// Canonical English names. Covers every classified country, the common
// unclassified ones and the usual dependent territories.
constexpr CountryRow kCountries[] = {
    {"AD", "Andorra"}, {"AE", "United Arab Emirates"}, {"AF", "Afghanistan"}, {"AG", "Antigua and Barbuda"},
    {"AI", "Anguilla"}, {"AL", "Albania"}, {"AM", "Armenia"}, {"AO", "Angola"}, {"AR", "Argentina"},
    {"AS", "American Samoa"}, {"AT", "Austria"}, {"AU", "Australia"}, {"AW", "Aruba"}, {"AX", "Aland Islands"},
    {"AZ", "Azerbaijan"}, {"BA", "Bosnia and Herzegovina"}, {"BB", "Barbados"}, {"BD", "Bangladesh"},
    {"BE", "Belgium"}, {"BF", "Burkina Faso"}, {"BG", "Bulgaria"}, {"BH", "Bahrain"}, {"BI", "Burundi"},
    {"BJ", "Benin"}, {"BL", "Saint Barthelemy"}, {"BM", "Bermuda"}, {"BN", "Brunei"}, {"BO", "Bolivia"},
    {"BQ", "Bonaire"}, {"BR", "Brazil"}, {"BS", "Bahamas"}, {"BT", "Bhutan"}, {"BW", "Botswana"},
    {"BY", "Belarus"}, {"BZ", "Belize"}, {"CA", "Canada"}, {"CD", "Democratic Republic Congo"},
    {"CF", "Central African Republic"}, {"CG", "Congo"}, {"CH", "Switzerland"}, {"CI", "Cote d'Ivoire"},
    {"CK", "Cook Islands"}, {"CL", "Chile"}, {"CM", "Cameroon"}, {"CN", "China"}, {"CO", "Colombia"},
    {"CR", "Costa Rica"}, {"CU", "Cuba"}, {"CV", "Cape Verde"}, {"CW", "Curacao"}, {"CY", "Cyprus"},
    {"CZ", "Czechia"}, {"DE", "Germany"}, {"DJ", "Djibouti"}, {"DK", "Denmark"}, {"DM", "Dominica"},
    {"DO", "Dominican Republic"}, {"DZ", "Algeria"}, {"EC", "Ecuador"}, {"EE", "Estonia"}, {"EG", "Egypt"},
    {"ER", "Eritrea"}, {"ES", "Spain"}, {"ET", "Ethiopia"}, {"FI", "Finland"}, {"FJ", "Fiji"},
    {"FK", "Falkland Islands"}, {"FM", "Micronesia"}, {"FO", "Faroe Islands"}, {"FR", "France"}, {"GA", "Gabon"},
    {"GB", "United Kingdom"}, {"GD", "Grenada"}, {"GE", "Georgia"}, {"GF", "French Guiana"}, {"GG", "Guernsey"},
    {"GH", "Ghana"}, {"GI", "Gibraltar"}, {"GL", "Greenland"}, {"GM", "Gambia"}, {"GN", "Guinea"},
    {"GP", "Guadeloupe"}, {"GQ", "Equatorial Guinea"}, {"GR", "Greece"}, {"GT", "Guatemala"}, {"GU", "Guam"},
    {"GW", "Guinea-Bissau"}, {"GY", "Guyana"}, {"HK", "Hong Kong"}, {"HN", "Honduras"}, {"HR", "Croatia"},
    {"HT", "Haiti"}, {"HU", "Hungary"}, {"ID", "Indonesia"}, {"IE", "Ireland"}, {"IL", "Israel"},
    {"IM", "Isle of Man"}, {"IN", "India"}, {"IQ", "Iraq"}, {"IR", "Iran"}, {"IS", "Iceland"}, {"IT", "Italy"},
    {"JE", "Jersey"}, {"JM", "Jamaica"}, {"JO", "Jordan"}, {"JP", "Japan"}, {"KE", "Kenya"}, {"KG", "Kyrgyzstan"},
    {"KH", "Cambodia"}, {"KI", "Kiribati"}, {"KM", "Comoros"}, {"KN", "Saint Kitts and Nevis"},
    {"KP", "North Korea"}, {"KR", "South Korea"}, {"KW", "Kuwait"}, {"KY", "Cayman Islands"},
    {"KZ", "Kazakhstan"}, {"LA", "Laos"}, {"LB", "Lebanon"}, {"LC", "Saint Lucia"}, {"LI", "Liechtenstein"},
    {"LK", "Sri Lanka"}, {"LR", "Liberia"}, {"LS", "Lesotho"}, {"LT", "Lithuania"}, {"LU", "Luxembourg"},
    {"LV", "Latvia"}, {"LY", "Libya"}, {"MA", "Morocco"}, {"MC", "Monaco"}, {"MD", "Moldova"},
    {"ME", "Montenegro"}, {"MF", "Saint Martin"}, {"MG", "Madagascar"}, {"MH", "Marshall Islands"},
    {"MK", "Macedonia"}, {"ML", "Mali"}, {"MM", "Myanmar"}, {"MN", "Mongolia"}, {"MO", "Macao"},
    {"MP", "Northern Mariana Islands"}, {"MQ", "Martinique"}, {"MR", "Mauritania"}, {"MS", "Montserrat"},
    {"MT", "Malta"}, {"MU", "Mauritius"}, {"MV", "Maldives"}, {"MW", "Malawi"}, {"MX", "Mexico"},
    {"MY", "Malaysia"}, {"MZ", "Mozambique"}, {"NA", "Namibia"}, {"NC", "New Caledonia"}, {"NE", "Niger"},
    {"NF", "Norfolk Island"}, {"NG", "Nigeria"}, {"NI", "Nicaragua"}, {"NL", "Netherlands"}, {"NO", "Norway"},
    {"NP", "Nepal"}, {"NR", "Nauru"}, {"NU", "Niue"}, {"NZ", "New Zealand"}, {"OM", "Oman"}, {"PA", "Panama"},
    {"PE", "Peru"}, {"PF", "French Polynesia"}, {"PG", "Papua New Guinea"}, {"PH", "Philippines"},
    {"PK", "Pakistan"}, {"PL", "Poland"}, {"PM", "Saint Pierre and Miquelon"}, {"PR", "Puerto Rico"},
    {"PS", "Palestine"}, {"PT", "Portugal"}, {"PW", "Palau"}, {"PY", "Paraguay"}, {"QA", "Qatar"},
    {"RE", "Reunion"}, {"RO", "Romania"}, {"RS", "Serbia"}, {"RU", "Russia"}, {"RW", "Rwanda"},
    {"SA", "Saudi Arabia"}, {"SB", "Solomon Islands"}, {"SC", "Seychelles"}, {"SD", "Sudan"}, {"SE", "Sweden"},
    {"SG", "Singapore"}, {"SH", "Saint Helena"}, {"SI", "Slovenia"}, {"SK", "Slovakia"}, {"SL", "Sierra Leone"},
    {"SM", "San Marino"}, {"SN", "Senegal"}, {"SO", "Somalia"}, {"SR", "Suriname"}, {"SS", "South Sudan"},
    {"ST", "Sao Tome and Principe"}, {"SV", "El Salvador"}, {"SX", "Sint Maarten"}, {"SY", "Syria"},
    {"SZ", "Swaziland"}, {"TC", "Turks and Caicos Islands"}, {"TD", "Chad"}, {"TG", "Togo"}, {"TH", "Thailand"},
    {"TJ", "Tajikistan"}, {"TK", "Tokelau"}, {"TL", "Timor-Leste"}, {"TM", "Turkmenistan"}, {"TN", "Tunisia"},
    {"TO", "Tonga"}, {"TR", "Turkey"}, {"TT", "Trinidad and Tobago"}, {"TV", "Tuvalu"}, {"TW", "Taiwan"},
    {"TZ", "Tanzania"}, {"UA", "Ukraine"}, {"UG", "Uganda"}, {"US", "United States"}, {"UY", "Uruguay"},
    {"UZ", "Uzbekistan"}, {"VA", "Vatican City"}, {"VC", "Saint Vincent and the Grenadines"},
    {"VE", "Venezuela"}, {"VG", "British Virgin Islands"}, {"VI", "U.S. Virgin Islands"}, {"VN", "Vietnam"},
    {"VU", "Vanuatu"}, {"WF", "Wallis and Futuna"}, {"WS", "Samoa"}, {"XK", "Kosovo"}, {"YE", "Yemen"},
    {"YT", "Mayotte"}, {"ZA", "South Africa"}, {"ZM", "Zambia"}, {"ZW", "Zimbabwe"},
};

// Alternative spellings seen in bibliographic databases.
constexpr CountryRow kAliases[] = {
    {"US", "USA"}, {"US", "United States of America"}, {"US", "U.S.A."}, {"GB", "UK"},
    {"GB", "Great Britain"}, {"GB", "England"}, {"GB", "Scotland"}, {"GB", "Wales"}, {"GB", "Northern Ireland"},
    {"RU", "Russian Federation"}, {"KR", "Korea"}, {"KR", "Korea, Republic of"}, {"KR", "Republic of Korea"},
    {"KP", "Korea, Democratic People's Republic of"}, {"CZ", "Czech Republic"}, {"VN", "Viet Nam"},
    {"IR", "Iran, Islamic Republic of"}, {"SY", "Syrian Arab Republic"}, {"LA", "Lao People's Democratic Republic"},
    {"MK", "North Macedonia"}, {"MK", "Former Yugoslav Republic of Macedonia"}, {"MD", "Moldova, Republic of"},
    {"TZ", "Tanzania, United Republic of"}, {"TZ", "United Republic of Tanzania"}, {"CI", "Ivory Coast"},
    {"CI", "Cote dIvoire"}, {"CI", "Côte d'Ivoire"}, {"CD", "Democratic Republic of the Congo"},
    {"CD", "Congo, The Democratic Republic of the"}, {"CD", "DR Congo"}, {"CG", "Republic of the Congo"},
    {"CV", "Cabo Verde"}, {"SZ", "Eswatini"}, {"MM", "Burma"}, {"BN", "Brunei Darussalam"},
    {"PS", "Palestinian Territory"}, {"PS", "State of Palestine"}, {"LY", "Libyan Arab Jamahiriya"},
    {"TW", "Taiwan, Province of China"}, {"HK", "Hong Kong SAR"}, {"MO", "Macau"}, {"CW", "Curaçao"},
    {"RE", "Réunion"}, {"BA", "Bosnia-Herzegovina"}, {"TT", "Trinidad & Tobago"}, {"GM", "The Gambia"},
    {"BS", "The Bahamas"}, {"VA", "Holy See (Vatican City State)"}, {"VA", "Vatican"}, {"TL", "East Timor"},
    {"KN", "Saint Kitts & Nevis"}, {"VI", "Virgin Islands (U.S.)"}, {"VG", "Virgin Islands (British)"},
    {"FM", "Micronesia, Federated States of"}, {"BO", "Bolivia, Plurinational State of"},
    {"VE", "Venezuela, Bolivarian Republic of"}, {"TR", "Türkiye"}, {"TR", "Turkiye"},
    {"NL", "The Netherlands"}, {"AX", "Åland Islands"},
};

constexpr GroupRow kGroups[] = {
    // Advanced countries (32); Malta reassigned from developing.
    {"AU", CountryGroup::AdvancedCountries}, {"AT", CountryGroup::AdvancedCountries},
    {"BE", CountryGroup::AdvancedCountries}, {"CA", CountryGroup::AdvancedCountries},
    {"CY", CountryGroup::AdvancedCountries}, {"DK", CountryGroup::AdvancedCountries},
    {"FI", CountryGroup::AdvancedCountries}, {"FR", CountryGroup::AdvancedCountries},
    {"DE", CountryGroup::AdvancedCountries}, {"GR", CountryGroup::AdvancedCountries},
    {"HK", CountryGroup::AdvancedCountries}, {"IS", CountryGroup::AdvancedCountries},
    {"IE", CountryGroup::AdvancedCountries}, {"IL", CountryGroup::AdvancedCountries},
    {"IT", CountryGroup::AdvancedCountries}, {"JP", CountryGroup::AdvancedCountries},
    {"LU", CountryGroup::AdvancedCountries}, {"NL", CountryGroup::AdvancedCountries},
    {"NZ", CountryGroup::AdvancedCountries}, {"NO", CountryGroup::AdvancedCountries},
    {"PT", CountryGroup::AdvancedCountries}, {"SG", CountryGroup::AdvancedCountries},
    {"KR", CountryGroup::AdvancedCountries}, {"ES", CountryGroup::AdvancedCountries},
    {"SE", CountryGroup::AdvancedCountries}, {"CH", CountryGroup::AdvancedCountries},
    {"TW", CountryGroup::AdvancedCountries}, {"GB", CountryGroup::AdvancedCountries},
    {"US", CountryGroup::AdvancedCountries}, {"LI", CountryGroup::AdvancedCountries},
    {"MC", CountryGroup::AdvancedCountries}, {"MT", CountryGroup::AdvancedCountries},
    // Developing - Africa (49)
    {"DZ", CountryGroup::DevelopingAfrica}, {"BJ", CountryGroup::DevelopingAfrica},
    {"BW", CountryGroup::DevelopingAfrica}, {"BF", CountryGroup::DevelopingAfrica},
    {"CM", CountryGroup::DevelopingAfrica}, {"CG", CountryGroup::DevelopingAfrica},
    {"CI", CountryGroup::DevelopingAfrica}, {"EG", CountryGroup::DevelopingAfrica},
    {"ET", CountryGroup::DevelopingAfrica}, {"GA", CountryGroup::DevelopingAfrica},
    {"GH", CountryGroup::DevelopingAfrica}, {"KE", CountryGroup::DevelopingAfrica},
    {"MG", CountryGroup::DevelopingAfrica}, {"MW", CountryGroup::DevelopingAfrica},
    {"ML", CountryGroup::DevelopingAfrica}, {"MA", CountryGroup::DevelopingAfrica},
    {"MZ", CountryGroup::DevelopingAfrica}, {"NA", CountryGroup::DevelopingAfrica},
    {"NG", CountryGroup::DevelopingAfrica}, {"SA", CountryGroup::DevelopingAfrica},
    {"SN", CountryGroup::DevelopingAfrica}, {"ZA", CountryGroup::DevelopingAfrica},
    {"SD", CountryGroup::DevelopingAfrica}, {"TZ", CountryGroup::DevelopingAfrica},
    {"TN", CountryGroup::DevelopingAfrica}, {"UG", CountryGroup::DevelopingAfrica},
    {"ZM", CountryGroup::DevelopingAfrica}, {"ZW", CountryGroup::DevelopingAfrica},
    {"LY", CountryGroup::DevelopingAfrica}, {"GM", CountryGroup::DevelopingAfrica},
    {"MU", CountryGroup::DevelopingAfrica}, {"NE", CountryGroup::DevelopingAfrica},
    {"TG", CountryGroup::DevelopingAfrica}, {"ER", CountryGroup::DevelopingAfrica},
    {"GN", CountryGroup::DevelopingAfrica}, {"RW", CountryGroup::DevelopingAfrica},
    {"SZ", CountryGroup::DevelopingAfrica}, {"LS", CountryGroup::DevelopingAfrica},
    {"AO", CountryGroup::DevelopingAfrica}, {"CD", CountryGroup::DevelopingAfrica},
    {"SL", CountryGroup::DevelopingAfrica}, {"CF", CountryGroup::DevelopingAfrica},
    {"SC", CountryGroup::DevelopingAfrica}, {"MR", CountryGroup::DevelopingAfrica},
    {"GW", CountryGroup::DevelopingAfrica}, {"BI", CountryGroup::DevelopingAfrica},
    {"LR", CountryGroup::DevelopingAfrica}, {"CV", CountryGroup::DevelopingAfrica},
    {"TD", CountryGroup::DevelopingAfrica},
    // Developing - Asia and Pacific (35)
    {"BD", CountryGroup::DevelopingAsiaPacific}, {"KH", CountryGroup::DevelopingAsiaPacific},
    {"CN", CountryGroup::DevelopingAsiaPacific}, {"IN", CountryGroup::DevelopingAsiaPacific},
    {"ID", CountryGroup::DevelopingAsiaPacific}, {"IR", CountryGroup::DevelopingAsiaPacific},
    {"JO", CountryGroup::DevelopingAsiaPacific}, {"KW", CountryGroup::DevelopingAsiaPacific},
    {"LB", CountryGroup::DevelopingAsiaPacific}, {"MY", CountryGroup::DevelopingAsiaPacific},
    {"NP", CountryGroup::DevelopingAsiaPacific}, {"OM", CountryGroup::DevelopingAsiaPacific},
    {"PK", CountryGroup::DevelopingAsiaPacific}, {"PH", CountryGroup::DevelopingAsiaPacific},
    {"LK", CountryGroup::DevelopingAsiaPacific}, {"SY", CountryGroup::DevelopingAsiaPacific},
    {"TH", CountryGroup::DevelopingAsiaPacific}, {"TR", CountryGroup::DevelopingAsiaPacific},
    {"AE", CountryGroup::DevelopingAsiaPacific}, {"VN", CountryGroup::DevelopingAsiaPacific},
    {"BH", CountryGroup::DevelopingAsiaPacific}, {"FJ", CountryGroup::DevelopingAsiaPacific},
    {"IQ", CountryGroup::DevelopingAsiaPacific}, {"KP", CountryGroup::DevelopingAsiaPacific},
    {"PS", CountryGroup::DevelopingAsiaPacific}, {"QA", CountryGroup::DevelopingAsiaPacific},
    {"BN", CountryGroup::DevelopingAsiaPacific}, {"LA", CountryGroup::DevelopingAsiaPacific},
    {"MM", CountryGroup::DevelopingAsiaPacific}, {"PG", CountryGroup::DevelopingAsiaPacific},
    {"YE", CountryGroup::DevelopingAsiaPacific}, {"AF", CountryGroup::DevelopingAsiaPacific},
    {"BT", CountryGroup::DevelopingAsiaPacific}, {"VU", CountryGroup::DevelopingAsiaPacific},
    {"SB", CountryGroup::DevelopingAsiaPacific},
    // Developing - America (30)
    {"AR", CountryGroup::DevelopingAmerica}, {"BO", CountryGroup::DevelopingAmerica},
    {"BR", CountryGroup::DevelopingAmerica}, {"CL", CountryGroup::DevelopingAmerica},
    {"CO", CountryGroup::DevelopingAmerica}, {"CR", CountryGroup::DevelopingAmerica},
    {"CU", CountryGroup::DevelopingAmerica}, {"EC", CountryGroup::DevelopingAmerica},
    {"GT", CountryGroup::DevelopingAmerica}, {"JM", CountryGroup::DevelopingAmerica},
    {"MX", CountryGroup::DevelopingAmerica}, {"PA", CountryGroup::DevelopingAmerica},
    {"PE", CountryGroup::DevelopingAmerica}, {"TT", CountryGroup::DevelopingAmerica},
    {"UY", CountryGroup::DevelopingAmerica}, {"VE", CountryGroup::DevelopingAmerica},
    {"BB", CountryGroup::DevelopingAmerica}, {"SV", CountryGroup::DevelopingAmerica},
    {"HN", CountryGroup::DevelopingAmerica}, {"NI", CountryGroup::DevelopingAmerica},
    {"PY", CountryGroup::DevelopingAmerica}, {"DO", CountryGroup::DevelopingAmerica},
    {"GD", CountryGroup::DevelopingAmerica}, {"HT", CountryGroup::DevelopingAmerica},
    {"BS", CountryGroup::DevelopingAmerica}, {"KN", CountryGroup::DevelopingAmerica},
    {"DM", CountryGroup::DevelopingAmerica}, {"GY", CountryGroup::DevelopingAmerica},
    {"SR", CountryGroup::DevelopingAmerica}, {"BZ", CountryGroup::DevelopingAmerica},
    // Transition - EU (11)
    {"BG", CountryGroup::TransitionEU}, {"HR", CountryGroup::TransitionEU}, {"CZ", CountryGroup::TransitionEU},
    {"EE", CountryGroup::TransitionEU}, {"HU", CountryGroup::TransitionEU}, {"LV", CountryGroup::TransitionEU},
    {"LT", CountryGroup::TransitionEU}, {"PL", CountryGroup::TransitionEU}, {"RO", CountryGroup::TransitionEU},
    {"SK", CountryGroup::TransitionEU}, {"SI", CountryGroup::TransitionEU},
    // Transition - non-EU (17)
    {"AM", CountryGroup::TransitionNonEU}, {"BY", CountryGroup::TransitionNonEU},
    {"BA", CountryGroup::TransitionNonEU}, {"GE", CountryGroup::TransitionNonEU},
    {"KZ", CountryGroup::TransitionNonEU}, {"MK", CountryGroup::TransitionNonEU},
    {"MN", CountryGroup::TransitionNonEU}, {"RU", CountryGroup::TransitionNonEU},
    {"UA", CountryGroup::TransitionNonEU}, {"UZ", CountryGroup::TransitionNonEU},
    {"AZ", CountryGroup::TransitionNonEU}, {"KG", CountryGroup::TransitionNonEU},
    {"MD", CountryGroup::TransitionNonEU}, {"RS", CountryGroup::TransitionNonEU},
    {"AL", CountryGroup::TransitionNonEU}, {"TJ", CountryGroup::TransitionNonEU},
    {"ME", CountryGroup::TransitionNonEU},
};

constexpr const char* kDependentTerritories[] = {
    "AI", "AS", "AW", "AX", "BL", "BM", "BQ", "CK", "CW", "FK", "FO", "GF", "GG", "GI", "GL", "GP", "GU", "IM",
    "JE", "KY", "MF", "MO", "MP", "MQ", "MS", "NC", "NF", "NU", "PF", "PM", "PR", "RE", "SH", "SX", "TC", "TK",
    "VG", "VI", "WF", "YT",
};

constexpr std::pair<CountryGroup, std::string_view> kGroupNames[] = {
    {CountryGroup::AdvancedCountries, "AdvancedCountries"},
    {CountryGroup::DevelopingAfrica, "DevelopingAfrica"},
    {CountryGroup::DevelopingAsiaPacific, "DevelopingAsiaPacific"},
    {CountryGroup::DevelopingAmerica, "DevelopingAmerica"},
    {CountryGroup::TransitionEU, "TransitionEU"},
    {CountryGroup::TransitionNonEU, "TransitionNonEU"},
};

std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

struct Lookup {
    std::unordered_map<std::string, std::string> by_label;
    std::unordered_map<std::string, std::string> names;

    Lookup() {
        for (const auto& row : kCountries) {
            by_label.emplace(fold(row.code), row.code);
            by_label.emplace(fold(row.name), row.code);
            names.emplace(row.code, row.name);
        }
        for (const auto& row : kAliases) {
            by_label.emplace(fold(row.name), row.code);
        }
    }
};

const Lookup& lookup() {
    static const Lookup instance;
    return instance;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::string_view group_name(CountryGroup group) {
    for (const auto& [g, name] : kGroupNames) {
        if (g == group) {
            return name;
        }
    }
    return "Unknown";
}

std::optional<CountryGroup> parse_group(std::string_view name) {
    for (const auto& [g, n] : kGroupNames) {
        if (n == name) {
            return g;
        }
    }
    return std::nullopt;
}

std::optional<std::string> normalize_country(std::string_view label) {
    const auto& table = lookup().by_label;
    const auto it = table.find(fold(trim(label)));
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string country_name(std::string_view code) {
    const auto& names = lookup().names;
    const auto it = names.find(std::string(code));
    return it == names.end() ? std::string(code) : it->second;
}

bool is_undefined_country(std::string_view label) {
    const auto folded = fold(trim(label));
    return folded == "undefined" || folded.empty() || folded == "unknown" || folded == "not available";
}

std::set<std::string> default_dependent_territories() {
    return {std::begin(kDependentTerritories), std::end(kDependentTerritories)};
}

CountryGroupTable::CountryGroupTable(std::map<std::string, CountryGroup> membership)
    : membership_(std::move(membership)) {}

CountryGroupTable CountryGroupTable::defaults() {
    std::map<std::string, CountryGroup> membership;
    for (const auto& row : kGroups) {
        membership.emplace(row.code, row.group);
    }
    return CountryGroupTable(std::move(membership));
}

CountryGroupTable CountryGroupTable::load(const std::string& path) {
    csv::Reader reader(path);
    reader.expect_header({"country_code", "group"});
    std::map<std::string, CountryGroup> membership;
    while (reader.next()) {
        const auto label = reader.text(0);
        const auto code = normalize_country(label);
        if (!code) {
            reader.fail(1, "unknown country '" + std::string(label) + "'");
        }
        const auto group = parse_group(reader.text(1));
        if (!group) {
            reader.fail(2, "unknown country group '" + std::string(reader.text(1)) + "'");
        }
        if (!membership.emplace(*code, *group).second) {
            reader.fail(1, "country '" + *code + "' listed twice");
        }
    }
    return CountryGroupTable(std::move(membership));
}

void CountryGroupTable::save(const std::string& path) const {
    csv::Writer writer(path);
    writer.row({"country_code", "group"});
    for (const auto& [code, group] : membership_) {
        writer.field(code).field(group_name(group)).end_row();
    }
    writer.close();
}

std::optional<CountryGroup> CountryGroupTable::classify(std::string_view country) const {
    const auto code = normalize_country(country);
    if (!code) {
        return std::nullopt;
    }
    const auto it = membership_.find(*code);
    if (it == membership_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::string> CountryGroupTable::members(CountryGroup group) const {
    std::vector<std::string> out;
    for (const auto& [code, g] : membership_) {
        if (g == group) {
            out.push_back(code);
        }
    }
    return out;
}

std::optional<CountryGroup> classify_country(std::string_view country) {
    static const CountryGroupTable table = CountryGroupTable::defaults();
    return table.classify(country);
}

}  // namespace globsci
