//! Club squads and competition calendars for the synthetic statistics store.

pub const PREMIER_LEAGUE: &str = "Premier League";
pub const LA_LIGA: &str = "La Liga";
pub const BUNDESLIGA: &str = "Bundesliga";
pub const SERIE_A: &str = "Serie A";
pub const LIGUE_1: &str = "Ligue 1";
pub const UCL: &str = "UEFA Champions League";

pub const SEASONS: [&str; 3] = ["2014-2015", "2015-2016", "2016-2017"];

/// Named squads, goalkeeper first. Clubs not listed get generated names.
pub fn squad(team: &str) -> Vec<String> {
    let names: &[&str] = match team {
        "Arsenal" => &[
            "Petr Cech", "Hector Bellerin", "Shkodran Mustafi", "Laurent Koscielny", "Nacho Monreal",
            "Granit Xhaka", "Francis Coquelin", "Mesut Ozil", "Alex Iwobi", "Alexis Sanchez",
            "Olivier Giroud", "Alex Oxlade-Chamberlain", "Aaron Ramsey", "Theo Walcott",
        ],
        "Paris SG" => &[
            "Alphonse Areola", "Kevin Trapp", "Serge Aurier", "Thomas Meunier", "Marquinhos", "Thiago Silva",
            "Layvin Kurzawa", "Marco Verratti", "Blaise Matuidi", "Adrien Rabiot", "Lucas Moura",
            "Edinson Cavani", "Angel Di Maria", "Julian Draxler", "Zlatan Ibrahimovic",
        ],
        "Chelsea" => &[
            "Thibaut Courtois", "Branislav Ivanovic", "Kurt Zouma", "Gary Cahill", "Cesar Azpilicueta",
            "Kenedy", "Nemanja Matic", "Ramires", "Cesc Fabregas", "Oscar", "Willian", "Eden Hazard",
            "Diego Costa",
        ],
        "Manchester City" => &[
            "Joe Hart", "Bacary Sagna", "Nicolas Otamendi", "Eliaquim Mangala", "Aleksandar Kolarov",
            "Fernandinho", "Fernando", "Yaya Toure", "David Silva", "Jesus Navas", "Kevin De Bruyne",
            "Raheem Sterling", "Wilfried Bony", "Sergio Aguero",
        ],
        "Liverpool" => &[
            "Simon Mignolet", "Nathaniel Clyne", "Dejan Lovren", "Mamadou Sakho", "James Milner",
            "Jordan Henderson", "Emre Can", "Georginio Wijnaldum", "Adam Lallana", "Philippe Coutinho",
            "Roberto Firmino", "Daniel Sturridge",
        ],
        "West Ham" => &[
            "Adrian", "Winston Reid", "James Collins", "Aaron Cresswell", "Mark Noble", "Cheikhou Kouyate",
            "Dimitri Payet", "Manuel Lanzini", "Michail Antonio", "Andy Carroll", "Diafra Sakho",
        ],
        "West Brom" => &[
            "Ben Foster", "Craig Dawson", "Jonny Evans", "Gareth McAuley", "Chris Brunt", "Darren Fletcher",
            "Claudio Yacob", "James Morrison", "Stephane Sessegnon", "Saido Berahino", "Salomon Rondon",
        ],
        "Norwich" => &[
            "John Ruddy", "Russell Martin", "Sebastien Bassong", "Timm Klose", "Robbie Brady", "Alex Tettey",
            "Jonny Howson", "Wes Hoolahan", "Nathan Redmond", "Dieumerci Mbokani", "Cameron Jerome",
        ],
        "Southampton" => &[
            "Maarten Stekelenburg", "Cedric Soares", "Jose Fonte", "Virgil van Dijk", "Ryan Bertrand",
            "Victor Wanyama", "Oriol Romeu", "Steven Davis", "Dusan Tadic", "Sadio Mane", "Graziano Pelle",
        ],
        "Barcelona" => &[
            "Marc-Andre ter Stegen", "Sergi Roberto", "Gerard Pique", "Samuel Umtiti", "Javier Mascherano",
            "Jordi Alba", "Sergio Busquets", "Andres Iniesta", "Ivan Rakitic", "Rafinha", "Lionel Messi",
            "Luis Suarez", "Neymar",
        ],
        "Real Madrid" => &[
            "Iker Casillas", "Keylor Navas", "Daniel Carvajal", "Raphael Varane", "Sergio Ramos", "Pepe",
            "Marcelo", "Toni Kroos", "Luka Modric", "Isco", "Casemiro", "James Rodriguez", "Gareth Bale",
            "Karim Benzema", "Cristiano Ronaldo",
        ],
        "Atl. Madrid" => &[
            "Jan Oblak", "Juanfran", "Diego Godin", "Stefan Savic", "Filipe Luis", "Gabi", "Saul Niguez",
            "Koke", "Yannick Carrasco", "Antoine Griezmann", "Fernando Torres",
        ],
        "Sevilla" => &[
            "Sergio Rico", "Coke", "Daniel Carrico", "Adil Rami", "Benoit Tremoulinas", "Grzegorz Krychowiak",
            "Steven N'Zonzi", "Vitolo", "Ever Banega", "Yevhen Konoplyanka", "Kevin Gameiro",
        ],
        "Malaga" => &[
            "Carlos Kameni", "Marcos Angeleri", "Weligton", "Sergio Sanchez", "Miguel Torres",
            "Ignacio Camacho", "Sergi Darder", "Nordin Amrabat", "Samu Castillejo", "Roque Santa Cruz", "Juanmi",
        ],
        "Granada" => &[
            "Oier Olazabal", "Allan Nyom", "Diego Mainz", "Jean-Sylvain Babin", "Juan Carlos", "Ruben Rochina",
            "Fran Rico", "Manuel Iturra", "Isaac Success", "Robert Ibanez", "Youssef El-Arabi",
        ],
        "Bayern Munich" => &[
            "Manuel Neuer", "Philipp Lahm", "Jerome Boateng", "Javi Martinez", "Mats Hummels", "David Alaba",
            "Xabi Alonso", "Arturo Vidal", "Thiago", "Douglas Costa", "Thomas Muller", "Arjen Robben",
            "Franck Ribery", "Robert Lewandowski",
        ],
        "Dortmund" => &[
            "Roman Burki", "Lukasz Piszczek", "Sokratis Papastathopoulos", "Marc Bartra", "Matthias Ginter",
            "Marcel Schmelzer", "Julian Weigl", "Gonzalo Castro", "Raphael Guerreiro", "Ousmane Dembele",
            "Marco Reus", "Adrian Ramos", "Pierre-Emerick Aubameyang",
        ],
        "Bayer Leverkusen" => &[
            "Bernd Leno", "Benjamin Henrichs", "Jonathan Tah", "Omer Toprak", "Wendell", "Kevin Kampl",
            "Charles Aranguiz", "Julian Brandt", "Karim Bellarabi", "Hakan Calhanoglu", "Javier Hernandez",
        ],
        "Schalke" => &[
            "Ralf Fahrmann", "Benedikt Howedes", "Naldo", "Sead Kolasinac", "Dennis Aogo", "Leon Goretzka",
            "Johannes Geis", "Max Meyer", "Leroy Sane", "Eric Maxim Choupo-Moting", "Klaas-Jan Huntelaar",
        ],
        "FC Koln" => &[
            "Timo Horn", "Pawel Olkowski", "Dominique Heintz", "Frederik Sorensen", "Jonas Hector",
            "Kevin Vogt", "Matthias Lehmann", "Leonardo Bittencourt", "Yuya Osako", "Simon Zoller",
            "Anthony Modeste",
        ],
        "Napoli" => &[
            "Pepe Reina", "Elseid Hysaj", "Raul Albiol", "Kalidou Koulibaly", "Faouzi Ghoulam", "Allan",
            "Jorginho", "Marek Hamsik", "Jose Callejon", "Lorenzo Insigne", "Dries Mertens", "Arkadiusz Milik",
        ],
        "Juventus" => &[
            "Gianluigi Buffon", "Stephan Lichtsteiner", "Leonardo Bonucci", "Giorgio Chiellini", "Alex Sandro",
            "Claudio Marchisio", "Sami Khedira", "Miralem Pjanic", "Paulo Dybala", "Mario Mandzukic",
            "Gonzalo Higuain",
        ],
        "FC Porto" => &[
            "Fabiano", "Danilo", "Maicon", "Bruno Martins Indi", "Hector Herrera", "Ruben Neves",
            "Oliver Torres", "Yacine Brahimi", "Ricardo Quaresma", "Cristian Tello", "Jackson Martinez",
        ],
        _ => &[],
    };
    if names.is_empty() {
        (1..=14).map(|i| format!("{team} Player {i}")).collect()
    } else {
        names.iter().map(|s| s.to_string()).collect()
    }
}

pub fn country(team: &str) -> &'static str {
    match team {
        "Arsenal" | "Chelsea" | "Manchester City" | "Liverpool" | "West Ham" | "West Brom" | "Norwich"
        | "Southampton" | "Leicester" | "Tottenham" | "Celtic" => "England",
        "Barcelona" | "Real Madrid" | "Atl. Madrid" | "Sevilla" | "Malaga" | "Granada" | "Athletic Bilbao"
        | "Valencia" => "Spain",
        "Bayern Munich" | "Dortmund" | "Bayer Leverkusen" | "Schalke" | "FC Koln" | "Monchengladbach"
        | "Wolfsburg" => "Germany",
        "Napoli" | "Juventus" | "Roma" => "Italy",
        "Paris SG" | "Lyon" | "Monaco" => "France",
        "FC Porto" | "Benfica" | "Sporting CP" => "Portugal",
        _ => "Other",
    }
}

/// Domestic league members per season.
pub fn league_teams(league: &str, season: &str) -> Vec<&'static str> {
    match (league, season) {
        (PREMIER_LEAGUE, "2015-2016") => vec![
            "Arsenal", "Chelsea", "Manchester City", "Liverpool", "West Ham", "West Brom", "Southampton", "Norwich",
        ],
        (PREMIER_LEAGUE, _) => {
            vec!["Arsenal", "Chelsea", "Manchester City", "Liverpool", "West Ham", "West Brom", "Southampton"]
        }
        (LA_LIGA, _) => vec!["Barcelona", "Real Madrid", "Atl. Madrid", "Sevilla", "Malaga", "Granada"],
        (BUNDESLIGA, _) => vec!["Bayern Munich", "Dortmund", "Bayer Leverkusen", "Schalke", "FC Koln"],
        (SERIE_A, _) => vec!["Napoli", "Juventus", "Roma"],
        (LIGUE_1, _) => vec!["Paris SG", "Lyon", "Monaco"],
        _ => Vec::new(),
    }
}

pub struct UclSeason {
    pub season: &'static str,
    /// Tuesday of each of the six group matchdays.
    pub matchdays: [&'static str; 6],
    pub groups: Vec<[&'static str; 4]>,
    /// Knockout ties as `(home, away, date)`.
    pub knockouts: Vec<(&'static str, &'static str, &'static str)>,
}

pub fn ucl_seasons() -> Vec<UclSeason> {
    vec![
        UclSeason {
            season: "2014-2015",
            matchdays: ["2014-09-16", "2014-09-30", "2014-10-21", "2014-11-04", "2014-11-25", "2014-12-09"],
            groups: vec![
                ["Real Madrid", "Liverpool", "Basel", "Ludogorets"],
                ["Barcelona", "Paris SG", "Ajax", "APOEL"],
                ["Chelsea", "Schalke", "Sporting CP", "Maribor"],
                ["Bayern Munich", "Manchester City", "Roma", "CSKA Moscow"],
                ["Dortmund", "Arsenal", "Anderlecht", "Galatasaray"],
                ["FC Porto", "Shakhtar Donetsk", "Athletic Bilbao", "BATE Borisov"],
                ["Atl. Madrid", "Juventus", "Olympiacos", "Malmo"],
                ["Monaco", "Bayer Leverkusen", "Benfica", "Zenit"],
            ],
            knockouts: vec![
                ("Schalke", "Real Madrid", "2015-02-18"),
                ("Basel", "FC Porto", "2015-02-18"),
                ("Paris SG", "Chelsea", "2015-02-17"),
                ("Shakhtar Donetsk", "Bayern Munich", "2015-02-17"),
                ("Manchester City", "Barcelona", "2015-02-24"),
                ("Juventus", "Dortmund", "2015-02-24"),
                ("Arsenal", "Monaco", "2015-02-25"),
                ("Bayer Leverkusen", "Atl. Madrid", "2015-02-25"),
                ("Real Madrid", "Schalke", "2015-03-10"),
                ("FC Porto", "Basel", "2015-03-10"),
                ("Chelsea", "Paris SG", "2015-03-11"),
                ("Bayern Munich", "Shakhtar Donetsk", "2015-03-11"),
                ("Monaco", "Arsenal", "2015-03-17"),
                ("Atl. Madrid", "Bayer Leverkusen", "2015-03-17"),
                ("Barcelona", "Manchester City", "2015-03-18"),
                ("Dortmund", "Juventus", "2015-03-18"),
                ("Atl. Madrid", "Real Madrid", "2015-04-14"),
                ("Juventus", "Monaco", "2015-04-14"),
                ("Paris SG", "Barcelona", "2015-04-15"),
                ("FC Porto", "Bayern Munich", "2015-04-15"),
                ("Barcelona", "Paris SG", "2015-04-21"),
                ("Bayern Munich", "FC Porto", "2015-04-21"),
                ("Real Madrid", "Atl. Madrid", "2015-04-22"),
                ("Monaco", "Juventus", "2015-04-22"),
            ],
        },
        UclSeason {
            season: "2015-2016",
            matchdays: ["2015-09-15", "2015-09-29", "2015-10-20", "2015-11-03", "2015-11-24", "2015-12-08"],
            groups: vec![
                ["Real Madrid", "Paris SG", "Shakhtar Donetsk", "Malmo"],
                ["Manchester City", "Juventus", "Monchengladbach", "Sevilla"],
                ["Chelsea", "Dynamo Kiev", "FC Porto", "Maccabi Tel Aviv"],
                ["Bayern Munich", "Arsenal", "Olympiacos", "Dinamo Zagreb"],
                ["Barcelona", "Roma", "Bayer Leverkusen", "BATE Borisov"],
                ["Atl. Madrid", "Benfica", "Galatasaray", "Astana"],
            ],
            knockouts: vec![
                ("Paris SG", "Chelsea", "2016-02-16"),
                ("Roma", "Real Madrid", "2016-02-17"),
                ("Arsenal", "Barcelona", "2016-02-23"),
                ("Juventus", "Bayern Munich", "2016-02-23"),
                ("Dynamo Kiev", "Manchester City", "2016-02-24"),
                ("PSV", "Atl. Madrid", "2016-02-24"),
                ("Real Madrid", "Roma", "2016-03-08"),
                ("Chelsea", "Paris SG", "2016-03-09"),
                ("Manchester City", "Dynamo Kiev", "2016-03-15"),
                ("Atl. Madrid", "PSV", "2016-03-15"),
                ("Barcelona", "Arsenal", "2016-03-16"),
                ("Bayern Munich", "Juventus", "2016-03-16"),
            ],
        },
        UclSeason {
            season: "2016-2017",
            matchdays: ["2016-09-13", "2016-09-27", "2016-10-18", "2016-11-01", "2016-11-22", "2016-12-06"],
            groups: vec![
                ["Arsenal", "Paris SG", "Basel", "Ludogorets"],
                ["Napoli", "Benfica", "Dynamo Kiev", "Besiktas"],
                ["Barcelona", "Manchester City", "Monchengladbach", "Celtic"],
                ["Atl. Madrid", "Bayern Munich", "PSV", "Rostov"],
                ["Real Madrid", "Dortmund", "Sporting CP", "Legia Warsaw"],
                ["Juventus", "Sevilla", "Lyon", "Dinamo Zagreb"],
                ["Bayer Leverkusen", "Monaco", "Tottenham", "CSKA Moscow"],
                ["Leicester", "FC Porto", "Copenhagen", "Club Brugge"],
            ],
            knockouts: vec![
                ("Paris SG", "Barcelona", "2017-02-14"),
                ("Benfica", "Dortmund", "2017-02-14"),
                ("Bayern Munich", "Arsenal", "2017-02-15"),
                ("Real Madrid", "Napoli", "2017-02-15"),
                ("Manchester City", "Monaco", "2017-02-21"),
                ("Bayer Leverkusen", "Atl. Madrid", "2017-02-21"),
                ("Sevilla", "Leicester", "2017-02-22"),
                ("FC Porto", "Juventus", "2017-02-22"),
                ("Barcelona", "Paris SG", "2017-03-07"),
                ("Arsenal", "Bayern Munich", "2017-03-07"),
                ("Napoli", "Real Madrid", "2017-03-07"),
                ("Dortmund", "Benfica", "2017-03-08"),
                ("Monaco", "Manchester City", "2017-03-15"),
                ("Atl. Madrid", "Bayer Leverkusen", "2017-03-15"),
                ("Leicester", "Sevilla", "2017-03-14"),
                ("Juventus", "FC Porto", "2017-03-14"),
                ("Juventus", "Barcelona", "2017-04-11"),
                ("Dortmund", "Monaco", "2017-04-12"),
                ("Bayern Munich", "Real Madrid", "2017-04-12"),
                ("Atl. Madrid", "Leicester", "2017-04-12"),
                ("Real Madrid", "Bayern Munich", "2017-04-18"),
                ("Leicester", "Atl. Madrid", "2017-04-18"),
                ("Barcelona", "Juventus", "2017-04-19"),
                ("Monaco", "Dortmund", "2017-04-19"),
                ("Real Madrid", "Atl. Madrid", "2017-05-02"),
                ("Monaco", "Juventus", "2017-05-03"),
                ("Atl. Madrid", "Real Madrid", "2017-05-10"),
                ("Juventus", "Monaco", "2017-05-09"),
            ],
        },
    ]
}

/// Group-stage pairings by matchday, as indices into a group of four.
pub const GROUP_SCHEDULE: [[(usize, usize); 2]; 6] = [
    [(1, 0), (2, 3)],
    [(0, 2), (3, 1)],
    [(0, 3), (1, 2)],
    [(3, 0), (2, 1)],
    [(0, 1), (3, 2)],
    [(2, 0), (1, 3)],
];

/// Real attributes for a handful of players; everyone else is synthesized.
pub fn known_player(name: &str) -> Option<(&'static str, u16, &'static str)> {
    Some(match name {
        "Edinson Cavani" => ("Uruguay", 184, "1987-02-14"),
        "Olivier Giroud" => ("France", 192, "1986-09-30"),
        "Alexis Sanchez" => ("Chile", 169, "1988-12-19"),
        "Marco Verratti" => ("Italy", 165, "1992-11-05"),
        "Lucas Moura" => ("Brazil", 172, "1992-08-13"),
        "Serge Aurier" => ("Ivory Coast", 176, "1992-12-24"),
        "Granit Xhaka" => ("Switzerland", 186, "1992-09-27"),
        "Francis Coquelin" => ("France", 178, "1991-05-13"),
        "Mesut Ozil" => ("Germany", 180, "1988-10-15"),
        "Cristiano Ronaldo" => ("Portugal", 187, "1985-02-05"),
        "Lionel Messi" => ("Argentina", 170, "1987-06-24"),
        "Neymar" => ("Brazil", 175, "1992-02-05"),
        "Arjen Robben" => ("Netherlands", 180, "1984-01-23"),
        "Sergio Aguero" => ("Argentina", 173, "1988-06-02"),
        _ => return None,
    })
}
