//! Match logs and refined-commentary records for the verification cases.

use serde_json::{json, Value};
use touchline_core::event::{Clock, EventKind, Lineups, MatchEvent, MatchLog, MatchMeta, PlayerRef, Position, Side};
use touchline_core::time::parse_datetime;

pub struct Club {
    pub name: &'static str,
    pub color: &'static str,
    pub coach: &'static str,
    pub xi: [(&'static str, u8); 11],
    pub bench: &'static [(&'static str, u8)],
}

fn position(i: usize) -> Position {
    match i {
        0 => Position::Goalkeeper,
        1..=4 => Position::Defender,
        5..=7 => Position::Midfielder,
        _ => Position::Forward,
    }
}

pub struct LogBuilder {
    log: MatchLog,
    bench: [Vec<PlayerRef>; 2],
}

fn clock(half: u8, mm: u32, ss: u32) -> Clock {
    Clock::new(half, mm * 60 + ss).expect("valid fixture clock")
}

impl LogBuilder {
    pub fn new(home: &Club, away: &Club, league: &str, season: &str, kickoff: &str) -> Self {
        let xi = |c: &Club| c.xi.iter().enumerate().map(|(i, (n, k))| PlayerRef::new(*n, *k, position(i))).collect();
        let bench = |c: &Club| c.bench.iter().map(|(n, k)| PlayerRef::new(*n, *k, Position::Midfielder)).collect();
        let meta = MatchMeta {
            home: home.name.into(),
            away: away.name.into(),
            league: league.into(),
            season: season.into(),
            kickoff: parse_datetime(kickoff).expect("valid kickoff"),
            home_color: home.color.into(),
            away_color: away.color.into(),
        };
        let lineups =
            Lineups { home: xi(home), away: xi(away), home_coach: home.coach.into(), away_coach: away.coach.into() };
        Self { log: MatchLog { meta, lineups, events: Vec::new() }, bench: [bench(home), bench(away)] }
    }

    fn find(&self, name: &str) -> (PlayerRef, Side) {
        let sides = [
            (Side::Home, self.log.lineups.home.iter().chain(&self.bench[0])),
            (Side::Away, self.log.lineups.away.iter().chain(&self.bench[1])),
        ];
        for (side, mut players) in sides {
            if let Some(p) = players.find(|p| p.name == name) {
                return (p.clone(), side);
            }
        }
        panic!("{name} is in neither squad")
    }

    /// Event by a named player, attributed to the player's side.
    pub fn by(mut self, half: u8, mm: u32, ss: u32, kind: EventKind, name: &str) -> Self {
        let (p, side) = self.find(name);
        self.log.events.push(MatchEvent::new(clock(half, mm, ss), kind, side).with_actor(p));
        self
    }

    pub fn assisted(mut self, half: u8, mm: u32, ss: u32, kind: EventKind, name: &str, assist: &str) -> Self {
        let (p, side) = self.find(name);
        let (a, _) = self.find(assist);
        self.log.events.push(MatchEvent::new(clock(half, mm, ss), kind, side).with_actor(p).with_assist(a));
        self
    }

    pub fn team(mut self, half: u8, mm: u32, ss: u32, kind: EventKind, side: Side) -> Self {
        self.log.events.push(MatchEvent::new(clock(half, mm, ss), kind, side));
        self
    }

    pub fn sub(mut self, half: u8, mm: u32, ss: u32, out: &str, sub_in: &str) -> Self {
        let (o, side) = self.find(out);
        let (i, _) = self.find(sub_in);
        self.log.events.push(MatchEvent::substitution(clock(half, mm, ss), side, o, i));
        self
    }

    pub fn build(mut self) -> MatchLog {
        self.log.events.sort_by_key(|e| e.clock());
        self.log.validate().expect("fixture log is valid");
        self.log
    }
}

pub const ARSENAL: Club = Club {
    name: "Arsenal",
    color: "red",
    coach: "Arsene Wenger",
    xi: [
        ("Petr Cech", 33),
        ("Hector Bellerin", 24),
        ("Shkodran Mustafi", 20),
        ("Laurent Koscielny", 6),
        ("Nacho Monreal", 18),
        ("Granit Xhaka", 29),
        ("Francis Coquelin", 34),
        ("Mesut Ozil", 11),
        ("Alex Iwobi", 17),
        ("Alexis Sanchez", 7),
        ("Olivier Giroud", 12),
    ],
    bench: &[("Alex Oxlade-Chamberlain", 15), ("Aaron Ramsey", 8)],
};

pub const PSG_2016: Club = Club {
    name: "Paris SG",
    color: "dark blue",
    coach: "Unai Emery",
    xi: [
        ("Alphonse Areola", 16),
        ("Serge Aurier", 19),
        ("Marquinhos", 5),
        ("Thiago Silva", 2),
        ("Layvin Kurzawa", 20),
        ("Marco Verratti", 6),
        ("Blaise Matuidi", 14),
        ("Adrien Rabiot", 25),
        ("Lucas Moura", 7),
        ("Edinson Cavani", 9),
        ("Angel Di Maria", 11),
    ],
    bench: &[("Julian Draxler", 23)],
};

/// Arsenal v Paris SG, finishing 2-2. Shared by the verification cases and
/// the pipeline bundle.
pub fn arsenal_psg() -> MatchLog {
    use EventKind::*;
    LogBuilder::new(&ARSENAL, &PSG_2016, "UEFA Champions League", "2016-2017", "2016-11-22T19:45:00Z")
        .assisted(1, 17, 40, Goal, "Edinson Cavani", "Lucas Moura")
        .by(1, 24, 10, Foul, "Granit Xhaka")
        .by(1, 30, 0, YellowCard, "Marco Verratti")
        .by(1, 38, 20, Corner, "Mesut Ozil")
        .by(1, 44, 30, PenaltyAwarded, "Alexis Sanchez")
        .by(1, 45, 10, PenaltyGoal, "Olivier Giroud")
        .by(2, 2, 0, FreeKick, "Lucas Moura")
        .by(2, 5, 0, OwnGoal, "Serge Aurier")
        .by(2, 7, 0, Offside, "Edinson Cavani")
        .sub(2, 20, 0, "Alex Iwobi", "Alex Oxlade-Chamberlain")
        .by(2, 25, 0, YellowCard, "Francis Coquelin")
        .by(2, 31, 0, PenaltyAwarded, "Edinson Cavani")
        .by(2, 32, 0, PenaltyGoal, "Lucas Moura")
        .build()
}

const CHELSEA_A: Club = Club {
    name: "Chelsea",
    color: "blue",
    coach: "Guus Hiddink",
    xi: [
        ("Thibaut Courtois", 13),
        ("Cesar Azpilicueta", 28),
        ("Kurt Zouma", 5),
        ("Gary Cahill", 24),
        ("Kenedy", 16),
        ("Nemanja Matic", 21),
        ("Cesc Fabregas", 4),
        ("Willian", 22),
        ("Oscar", 8),
        ("Eden Hazard", 10),
        ("Diego Costa", 19),
    ],
    bench: &[],
};

const CHELSEA_B: Club = Club {
    name: "Chelsea",
    color: "blue",
    coach: "Jose Mourinho",
    xi: [
        ("Thibaut Courtois", 13),
        ("Branislav Ivanovic", 2),
        ("Kurt Zouma", 5),
        ("Gary Cahill", 24),
        ("Cesar Azpilicueta", 28),
        ("Nemanja Matic", 21),
        ("Ramires", 7),
        ("Cesc Fabregas", 4),
        ("Willian", 22),
        ("Eden Hazard", 10),
        ("Diego Costa", 19),
    ],
    bench: &[],
};

const NORWICH: Club = Club {
    name: "Norwich",
    color: "yellow",
    coach: "Alex Neil",
    xi: [
        ("John Ruddy", 1),
        ("Russell Martin", 2),
        ("Sebastien Bassong", 5),
        ("Timm Klose", 18),
        ("Robbie Brady", 12),
        ("Alex Tettey", 27),
        ("Jonny Howson", 8),
        ("Wes Hoolahan", 14),
        ("Nathan Redmond", 11),
        ("Dieumerci Mbokani", 10),
        ("Cameron Jerome", 9),
    ],
    bench: &[],
};

const SOUTHAMPTON: Club = Club {
    name: "Southampton",
    color: "red and white",
    coach: "Ronald Koeman",
    xi: [
        ("Maarten Stekelenburg", 22),
        ("Cedric Soares", 2),
        ("Jose Fonte", 6),
        ("Virgil van Dijk", 17),
        ("Ryan Bertrand", 21),
        ("Victor Wanyama", 12),
        ("Oriol Romeu", 14),
        ("Steven Davis", 8),
        ("Dusan Tadic", 11),
        ("Sadio Mane", 10),
        ("Graziano Pelle", 19),
    ],
    bench: &[],
};

const SEVILLA: Club = Club {
    name: "Sevilla",
    color: "white",
    coach: "Unai Emery",
    xi: [
        ("Sergio Rico", 13),
        ("Coke", 23),
        ("Daniel Carrico", 6),
        ("Adil Rami", 5),
        ("Benoit Tremoulinas", 18),
        ("Grzegorz Krychowiak", 4),
        ("Steven N'Zonzi", 15),
        ("Vitolo", 20),
        ("Ever Banega", 19),
        ("Yevhen Konoplyanka", 22),
        ("Kevin Gameiro", 9),
    ],
    bench: &[],
};

const MAN_CITY: Club = Club {
    name: "Manchester City",
    color: "sky blue",
    coach: "Manuel Pellegrini",
    xi: [
        ("Joe Hart", 1),
        ("Bacary Sagna", 3),
        ("Nicolas Otamendi", 30),
        ("Eliaquim Mangala", 20),
        ("Aleksandar Kolarov", 11),
        ("Fernandinho", 25),
        ("Fernando", 6),
        ("Jesus Navas", 15),
        ("Kevin De Bruyne", 17),
        ("Raheem Sterling", 7),
        ("Wilfried Bony", 14),
    ],
    bench: &[],
};

const DORTMUND_A: Club = Club {
    name: "Dortmund",
    color: "yellow and black",
    coach: "Thomas Tuchel",
    xi: [
        ("Roman Burki", 38),
        ("Lukasz Piszczek", 26),
        ("Sokratis Papastathopoulos", 25),
        ("Marc Bartra", 5),
        ("Marcel Schmelzer", 29),
        ("Julian Weigl", 33),
        ("Gonzalo Castro", 27),
        ("Raphael Guerreiro", 13),
        ("Ousmane Dembele", 7),
        ("Adrian Ramos", 20),
        ("Pierre-Emerick Aubameyang", 17),
    ],
    bench: &[],
};

const DORTMUND_B: Club = Club {
    name: "Dortmund",
    color: "black",
    coach: "Thomas Tuchel",
    xi: [
        ("Roman Burki", 38),
        ("Lukasz Piszczek", 26),
        ("Sokratis Papastathopoulos", 25),
        ("Matthias Ginter", 28),
        ("Marcel Schmelzer", 29),
        ("Julian Weigl", 33),
        ("Gonzalo Castro", 27),
        ("Marco Reus", 11),
        ("Ousmane Dembele", 7),
        ("Adrian Ramos", 20),
        ("Pierre-Emerick Aubameyang", 17),
    ],
    bench: &[],
};

const BAYERN_2016: Club = Club {
    name: "Bayern Munich",
    color: "white",
    coach: "Carlo Ancelotti",
    xi: [
        ("Manuel Neuer", 1),
        ("Philipp Lahm", 21),
        ("Jerome Boateng", 17),
        ("Mats Hummels", 5),
        ("David Alaba", 27),
        ("Xabi Alonso", 14),
        ("Arturo Vidal", 23),
        ("Thiago", 6),
        ("Thomas Muller", 25),
        ("Franck Ribery", 7),
        ("Robert Lewandowski", 9),
    ],
    bench: &[],
};

const BAYERN_2015: Club = Club {
    name: "Bayern Munich",
    color: "red",
    coach: "Pep Guardiola",
    xi: [
        ("Manuel Neuer", 1),
        ("Philipp Lahm", 21),
        ("Jerome Boateng", 17),
        ("Javi Martinez", 8),
        ("David Alaba", 27),
        ("Xabi Alonso", 14),
        ("Arturo Vidal", 23),
        ("Douglas Costa", 11),
        ("Thomas Muller", 25),
        ("Arjen Robben", 10),
        ("Robert Lewandowski", 9),
    ],
    bench: &[],
};

const KOLN: Club = Club {
    name: "FC Koln",
    color: "white and red",
    coach: "Peter Stoger",
    xi: [
        ("Timo Horn", 1),
        ("Pawel Olkowski", 16),
        ("Dominique Heintz", 3),
        ("Frederik Sorensen", 4),
        ("Jonas Hector", 14),
        ("Kevin Vogt", 6),
        ("Matthias Lehmann", 33),
        ("Leonardo Bittencourt", 21),
        ("Yuya Osako", 13),
        ("Simon Zoller", 11),
        ("Anthony Modeste", 27),
    ],
    bench: &[],
};

const LEVERKUSEN: Club = Club {
    name: "Bayer Leverkusen",
    color: "red",
    coach: "Roger Schmidt",
    xi: [
        ("Bernd Leno", 1),
        ("Benjamin Henrichs", 39),
        ("Jonathan Tah", 4),
        ("Omer Toprak", 21),
        ("Wendell", 18),
        ("Kevin Kampl", 44),
        ("Charles Aranguiz", 20),
        ("Julian Brandt", 19),
        ("Karim Bellarabi", 38),
        ("Hakan Calhanoglu", 10),
        ("Javier Hernandez", 7),
    ],
    bench: &[],
};

const REAL_MADRID: Club = Club {
    name: "Real Madrid",
    color: "white",
    coach: "Carlo Ancelotti",
    xi: [
        ("Iker Casillas", 1),
        ("Daniel Carvajal", 15),
        ("Raphael Varane", 2),
        ("Sergio Ramos", 4),
        ("Marcelo", 12),
        ("Toni Kroos", 8),
        ("Luka Modric", 19),
        ("Isco", 23),
        ("Gareth Bale", 11),
        ("Karim Benzema", 9),
        ("Cristiano Ronaldo", 7),
    ],
    bench: &[],
};

const MALAGA: Club = Club {
    name: "Malaga",
    color: "blue and white",
    coach: "Javi Gracia",
    xi: [
        ("Carlos Kameni", 25),
        ("Marcos Angeleri", 2),
        ("Weligton", 5),
        ("Sergio Sanchez", 22),
        ("Miguel Torres", 3),
        ("Ignacio Camacho", 6),
        ("Sergi Darder", 8),
        ("Nordin Amrabat", 7),
        ("Samu Castillejo", 11),
        ("Roque Santa Cruz", 24),
        ("Juanmi", 20),
    ],
    bench: &[],
};

const GRANADA: Club = Club {
    name: "Granada",
    color: "red and white",
    coach: "Jose Ramon Sandoval",
    xi: [
        ("Oier Olazabal", 1),
        ("Allan Nyom", 2),
        ("Diego Mainz", 4),
        ("Jean-Sylvain Babin", 5),
        ("Juan Carlos", 3),
        ("Ruben Rochina", 10),
        ("Fran Rico", 8),
        ("Manuel Iturra", 6),
        ("Isaac Success", 11),
        ("Robert Ibanez", 17),
        ("Youssef El-Arabi", 9),
    ],
    bench: &[],
};

const BARCELONA: Club = Club {
    name: "Barcelona",
    color: "blue and red",
    coach: "Luis Enrique",
    xi: [
        ("Marc-Andre ter Stegen", 1),
        ("Sergi Roberto", 20),
        ("Gerard Pique", 3),
        ("Samuel Umtiti", 23),
        ("Javier Mascherano", 14),
        ("Sergio Busquets", 5),
        ("Andres Iniesta", 8),
        ("Rafinha", 12),
        ("Lionel Messi", 10),
        ("Luis Suarez", 9),
        ("Neymar", 11),
    ],
    bench: &[],
};

const PSG_2017: Club = Club {
    name: "Paris SG",
    color: "white",
    coach: "Unai Emery",
    xi: [
        ("Kevin Trapp", 1),
        ("Thomas Meunier", 12),
        ("Marquinhos", 5),
        ("Thiago Silva", 2),
        ("Layvin Kurzawa", 20),
        ("Marco Verratti", 6),
        ("Blaise Matuidi", 14),
        ("Adrien Rabiot", 25),
        ("Lucas Moura", 7),
        ("Edinson Cavani", 9),
        ("Julian Draxler", 23),
    ],
    bench: &[],
};

/// One refined commentary line with the match it belongs to.
pub struct Case {
    pub id: &'static str,
    pub log: MatchLog,
    pub record: Value,
}

fn record(id: &str, clock: &str, label: &str, body: &str, annotations: Value) -> Value {
    json!({ "segment_id": id, "body": body, "clock": clock, "event_label": label, "annotations": annotations })
}

/// Every match log behind a case, for the statistics store.
pub fn all_logs() -> Vec<MatchLog> {
    let mut logs: Vec<MatchLog> = cases().into_iter().map(|c| c.log).collect();
    logs.dedup_by(|a, b| a.meta == b.meta);
    logs
}

pub fn cases() -> Vec<Case> {
    use EventKind::*;
    let norwich_chelsea = LogBuilder::new(&NORWICH, &CHELSEA_A, "Premier League", "2015-2016", "2016-03-01T19:45:00Z")
        .by(1, 0, 50, Goal, "Kenedy")
        .assisted(1, 44, 0, Goal, "Diego Costa", "Cesc Fabregas")
        .assisted(2, 23, 0, Goal, "Nathan Redmond", "Wes Hoolahan")
        .team(2, 28, 0, Corner, Side::Away)
        .by(2, 30, 0, Corner, "Willian")
        .build();
    let sevilla_city =
        LogBuilder::new(&SEVILLA, &MAN_CITY, "UEFA Champions League", "2015-2016", "2015-11-03T19:45:00Z")
            .by(1, 7, 0, Goal, "Raheem Sterling")
            .by(1, 11, 0, OwnGoal, "Benoit Tremoulinas")
            .by(1, 30, 0, Goal, "Yevhen Konoplyanka")
            .by(1, 36, 0, Goal, "Kevin De Bruyne")
            .by(1, 40, 0, YellowCard, "Grzegorz Krychowiak")
            .by(2, 33, 38, Foul, "Grzegorz Krychowiak")
            .build();
    let chelsea_southampton =
        LogBuilder::new(&CHELSEA_B, &SOUTHAMPTON, "Premier League", "2015-2016", "2015-10-03T14:00:00Z")
            .by(1, 9, 30, FreeKick, "Willian")
            .by(1, 10, 0, Goal, "Willian")
            .by(1, 20, 0, YellowCard, "Ryan Bertrand")
            .by(1, 35, 0, YellowCard, "Sadio Mane")
            .by(1, 43, 0, Foul, "Ramires")
            .by(1, 43, 0, YellowCard, "Ramires")
            .by(1, 44, 0, Goal, "Steven Davis")
            .by(2, 15, 0, Goal, "Sadio Mane")
            .by(2, 30, 0, Goal, "Graziano Pelle")
            .build();
    let dortmund_bayern =
        LogBuilder::new(&DORTMUND_A, &BAYERN_2016, "Bundesliga", "2016-2017", "2016-11-19T17:30:00Z")
            .assisted(1, 11, 0, Goal, "Pierre-Emerick Aubameyang", "Raphael Guerreiro")
            .by(1, 38, 0, YellowCard, "Adrian Ramos")
            .by(2, 10, 0, YellowCard, "Marc Bartra")
            .by(2, 22, 0, YellowCard, "Franck Ribery")
            .build();
    let real_malaga = LogBuilder::new(&REAL_MADRID, &MALAGA, "La Liga", "2014-2015", "2015-04-18T18:00:00Z")
        .by(1, 24, 0, HeaderGoal, "Sergio Ramos")
        .assisted(1, 29, 0, Goal, "Karim Benzema", "Isco")
        .by(2, 25, 0, HeaderGoal, "Juanmi")
        .by(2, 44, 0, Goal, "Cristiano Ronaldo")
        .build();
    let leverkusen_dortmund =
        LogBuilder::new(&LEVERKUSEN, &DORTMUND_B, "Bundesliga", "2016-2017", "2016-10-01T13:30:00Z")
            .by(1, 8, 0, Goal, "Karim Bellarabi")
            .by(1, 12, 0, YellowCard, "Charles Aranguiz")
            .by(1, 20, 0, YellowCard, "Omer Toprak")
            .by(1, 28, 0, YellowCard, "Kevin Kampl")
            .by(1, 35, 0, YellowCard, "Wendell")
            .by(1, 43, 0, YellowCard, "Matthias Ginter")
            .by(2, 30, 0, Goal, "Javier Hernandez")
            .build();
    let real_granada = LogBuilder::new(&REAL_MADRID, &GRANADA, "La Liga", "2014-2015", "2015-04-05T16:00:00Z")
        .by(1, 1, 0, Goal, "Youssef El-Arabi")
        .by(1, 25, 0, Goal, "Gareth Bale")
        .by(1, 30, 0, Goal, "Cristiano Ronaldo")
        .by(1, 36, 0, Goal, "Cristiano Ronaldo")
        .by(1, 38, 0, HeaderGoal, "Cristiano Ronaldo")
        .by(1, 44, 0, Offside, "Cristiano Ronaldo")
        .by(2, 9, 0, Goal, "Karim Benzema")
        .by(2, 16, 0, Goal, "Cristiano Ronaldo")
        .by(2, 27, 0, Goal, "Karim Benzema")
        .by(2, 39, 0, OwnGoal, "Diego Mainz")
        .by(2, 44, 0, Goal, "Cristiano Ronaldo")
        .build();
    let bayern_koln = LogBuilder::new(&BAYERN_2015, &KOLN, "Bundesliga", "2015-2016", "2015-10-23T18:30:00Z")
        .by(1, 10, 0, Goal, "Robert Lewandowski")
        .by(1, 14, 0, Corner, "Douglas Costa")
        .by(1, 21, 0, Corner, "Thomas Muller")
        .by(1, 27, 0, Corner, "Arjen Robben")
        .by(1, 33, 0, Corner, "David Alaba")
        .by(1, 39, 0, Corner, "Douglas Costa")
        .by(1, 44, 0, Corner, "Arjen Robben")
        .by(2, 10, 0, Goal, "Thomas Muller")
        .by(2, 25, 0, Goal, "Robert Lewandowski")
        .by(2, 40, 0, HeaderGoal, "Javi Martinez")
        .build();
    let barca_psg = LogBuilder::new(&BARCELONA, &PSG_2017, "UEFA Champions League", "2016-2017", "2017-03-07T19:45:00Z")
        .by(1, 3, 0, HeaderGoal, "Luis Suarez")
        .by(1, 40, 0, OwnGoal, "Layvin Kurzawa")
        .by(2, 4, 0, PenaltyAwarded, "Neymar")
        .by(2, 5, 0, PenaltyGoal, "Lionel Messi")
        .by(2, 17, 0, Goal, "Edinson Cavani")
        .by(2, 43, 0, FreeKick, "Neymar")
        .by(2, 43, 0, Goal, "Neymar")
        .by(2, 45, 30, PenaltyAwarded, "Luis Suarez")
        .by(2, 46, 0, PenaltyGoal, "Neymar")
        .assisted(2, 50, 0, Goal, "Sergi Roberto", "Neymar")
        .build();

    vec![
        Case {
            id: "good_cavani_offside",
            log: arsenal_psg(),
            record: record(
                "good_cavani_offside",
                "2 - 07:00",
                "offside",
                "In the 52nd minute of the match, Edinson Cavani times his run too early, and the linesman raises his flag for offside. It's a frustrating moment for the Paris SG forward, who has already found the net twice in this UEFA Champions League season. The away team will be hoping to capitalize on their attacking efforts as they trail 2-1 against Arsenal here at the Emirates Stadium.",
                json!([]),
            ),
        },
        Case {
            id: "good_lucas_free_kick",
            log: arsenal_psg(),
            record: record(
                "good_lucas_free_kick",
                "2 - 02:00",
                "free_kick",
                "Lucas Moura steps up for a mid-range free kick, showcasing his trademark technique! He strikes it brilliantly, but it crashes against the crossbar, sending shockwaves through the Emirates Stadium. Paris SG is putting the pressure on Arsenal, as Lucas looks to add to his three goals this season. The score remains 1-1 here in the second half!",
                json!([]),
            ),
        },
        Case {
            id: "good_willian_corner",
            log: norwich_chelsea,
            record: record(
                "good_willian_corner",
                "2 - 30:00",
                "corner",
                "Willian steps up to take the corner for Chelsea after a well-defended sequence. They've been pressing hard, looking to extend their lead. The current score stands at 2-1 in favor of the visitors. The last corner was also for Chelsea, but they\u{2019}ll look to make this one count at Carrow Road. Let\u{2019}s see how Norwich's defense responds!",
                json!([]),
            ),
        },
        Case {
            id: "good_krychowiak_foul",
            log: sevilla_city,
            record: record(
                "good_krychowiak_foul",
                "2 - 33:38",
                "foul",
                "Grzegorz Krychowiak brings down an opponent, and referee Svein Moen swiftly halts play. It's a strategic foul from the Sevilla midfielder as they look to regain control of the game. We're now at 33 minutes and 38 seconds into the second half, with Sevilla trailing 1-3 against Manchester City. Krychowiak, who has already received a yellow card earlier, will need to be cautious for the remainder of the match.",
                json!([]),
            ),
        },
        Case {
            id: "good_ramires_booking",
            log: chelsea_southampton,
            record: record(
                "good_ramires_booking",
                "1 - 43:00",
                "yellow_card",
                "As we approach the closing stages of the first half, Ramires from Chelsea commits a foul, much to his dismay, and is issued a yellow card by the referee. The Brazilian midfielder clearly disagrees with the decision as he gestures his frustration. Meanwhile, Southampton has already received two yellow cards in this match, with Ryan Bertrand and Sadio Mane already cautioned. The tension is palpable as Chelsea leads 1-0 following Willian's early free-kick goal.",
                json!([]),
            ),
        },
        Case {
            id: "good_ribery_booking",
            log: dortmund_bayern,
            record: record(
                "good_ribery_booking",
                "2 - 22:00",
                "yellow_card",
                "As we approach the midway point of the second half, Franck Ribery has just received a yellow card for Bayern Munich after a late challenge. This adds to the growing tension in this highly contested match at Signal Iduna Park, with Dortmund leading 1-0 following Pierre-Emerick Aubameyang's opening goal in the first half. Ribery's booking could have significant implications as both teams battle for control. This marks the third yellow card of the match, with Adrian Ramos and Marc Bartra already cautioned for Dortmund. The stakes are high as we inch closer to the final whistle.",
                json!([]),
            ),
        },
        Case {
            id: "good_juanmi_header",
            log: real_malaga,
            record: record(
                "good_juanmi_header",
                "2 - 25:00",
                "goal",
                "Juanmi has found the back of the net for Malaga! At the 70th minute, a perfectly timed cross allows him to break free one-on-one with Iker Casillas. The young forward rises above the defenders to deliver a brilliant header down into the center of the goal, leaving the Real Madrid keeper with no chance. This goal comes as Malaga seeks to fight back after being two goals down. The score now stands at 2-1, and the home crowd at the Santiago Bernab\u{e9}u is stunned!",
                json!([]),
            ),
        },
        Case {
            id: "bad_ginter_booking",
            log: leverkusen_dortmund,
            record: record(
                "bad_ginter_booking",
                "1 - 43:00",
                "yellow_card",
                "Matthias Ginter of Dortmund has been booked, receiving a yellow card for a robust challenge. Referee Manuel Grafe didn't hesitate to brandish the card, a clear indication of the game's growing physicality. This marks another disciplinary action in what has been a fiercely contested encounter, with Leverkusen already having three yellow cards to their name. The score remains 1-0 to Bayer Leverkusen as we approach the half-time mark.",
                json!([]),
            ),
        },
        Case {
            id: "bad_ronaldo_possession",
            log: real_granada,
            record: record(
                "bad_ronaldo_possession",
                "1 - 44:00",
                "offside",
                "The game takes a brief pause as Cristiano Ronaldo is caught offside, just as Real Madrid was looking to capitalize on their significant lead here at the Santiago Bernab\u{e9}u. With the score at 4-1 and about a minute to go until halftime, the home side has controlled the play and maintains 62% possession. This offside decision serves as a reminder for Madrid to be mindful of their positioning as they continue to push for more goals.",
                json!([{ "query": "COUNT possession TEAM \"Real Madrid\" BEFORE 2015-04-05", "claimed": 62, "text": "maintains 62% possession" }]),
            ),
        },
        Case {
            id: "bad_robben_corner",
            log: bayern_koln,
            record: record(
                "bad_robben_corner",
                "1 - 44:00",
                "corner",
                "Arjen Robben weaves into the box and delivers a low pass towards the goal, but it\u{2019}s intercepted by the FC K\u{f6}ln defense. However, the referee swiftly points to the corner flag\u{2014}Bayern Munich will have a corner kick, their fifth of the match so far. With the score at 1-0, Bayern is looking to further capitalize on their attacking momentum here at the Allianz Arena.",
                json!([]),
            ),
        },
        Case {
            id: "bad_neymar_penalty",
            log: barca_psg,
            record: record(
                "bad_neymar_penalty",
                "2 - 46:00",
                "penalty_goal",
                "And there it is! Goal! Neymar steps up to take the penalty and finishes with tremendous precision, slamming the ball home just inside the right post. That's a crucial strike for Barcelona as they extend their lead to 4-1 against Paris SG. The home crowd at Camp Nou erupts! This is Neymar's second goal of the match, following his earlier stunning free kick. Just what Barcelona needed as they push for a commanding victory in this Champions League clash!",
                json!([]),
            ),
        },
    ]
}
