use super::lexer::{tokenize, Tok};
use super::*;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, DslError>;

pub fn parse_model_spec(text: &str) -> Result<ModelSpecDocument, DslError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    p.document()
}

pub(super) fn parse_set_only(text: &str) -> Result<SetLit, DslError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let set = p.set()?;
    p.expect(&Tok::Eof)?;
    Ok(set)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        DslError::new(
            ErrorKind::Syntax,
            self.pos(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, t: &Tok) -> PResult<Pos> {
        if self.peek() == t {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    fn keyword(&mut self, w: &str) -> PResult<Pos> {
        if self.is_word(w) {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn name(&mut self, what: &str) -> PResult<Name> {
        match self.peek() {
            Tok::Word(w) => {
                let text = w.clone();
                let pos = self.next().1;
                Ok(Name {
                    text,
                    loc: Loc(Some(pos)),
                })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn integer(&mut self) -> PResult<i64> {
        let pos = self.pos();
        let n = self.name("an integer")?;
        n.text
            .parse()
            .map_err(|_| DslError::new(ErrorKind::Syntax, pos, format!("expected an integer, found `{}`", n.text)))
    }

    fn set(&mut self) -> PResult<SetLit> {
        let pos = self.expect(&Tok::LBrace)?;
        let mut items = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                items.push(self.name("a name")?);
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        Ok(SetLit {
            items,
            loc: Loc(Some(pos)),
        })
    }

    fn document(&mut self) -> PResult<ModelSpecDocument> {
        self.keyword("states")?;
        let mut states = Vec::new();
        while !self.eat(&Tok::Semi) {
            states.push(self.name("a state name or `;`")?);
        }
        if states.is_empty() {
            return Err(DslError::new(
                ErrorKind::Syntax,
                self.toks[self.at - 1].1,
                "`states` needs at least one state",
            ));
        }
        let mut doc = ModelSpecDocument {
            states,
            players: Vec::new(),
            signals: Vec::new(),
            game: None,
        };
        loop {
            match self.peek() {
                Tok::Eof => return Ok(doc),
                Tok::Word(w) if w == "player" => {
                    let p = self.player()?;
                    doc.players.push(p);
                }
                Tok::Word(w) if w == "signal" => {
                    let s = self.signal()?;
                    doc.signals.push(s);
                }
                Tok::Word(w) if w == "game" => {
                    let pos = self.pos();
                    let g = self.game()?;
                    if doc.game.is_some() {
                        return Err(DslError::new(ErrorKind::Semantic, pos, "only one `game` block is allowed"));
                    }
                    doc.game = Some(g);
                }
                _ => return Err(self.unexpected("`player`, `signal`, `game` or end of input")),
            }
        }
    }

    fn player(&mut self) -> PResult<PlayerDecl> {
        let pos = self.keyword("player")?;
        let name = self.name("a player name")?;
        self.expect(&Tok::LBrace)?;
        let spec = if self.is_word("kripke") {
            self.next();
            self.expect(&Tok::LBrace)?;
            let mut rows = Vec::new();
            while !self.eat(&Tok::RBrace) {
                let s = self.name("a state name or `}`")?;
                self.expect(&Tok::Colon)?;
                let set = self.set()?;
                self.eat(&Tok::Semi);
                rows.push((s, set));
            }
            OperatorSpec::Kripke(rows)
        } else if self.is_word("table") || self.is_word("core") {
            let core = self.is_word("core");
            self.next();
            self.expect(&Tok::LBrace)?;
            let mut rows = Vec::new();
            while !self.eat(&Tok::RBrace) {
                if self.peek() != &Tok::LBrace {
                    return Err(self.unexpected("`{` or `}`"));
                }
                let from = self.set()?;
                self.expect(&Tok::Colon)?;
                let to = self.set()?;
                self.eat(&Tok::Semi);
                rows.push((from, to));
            }
            if core {
                OperatorSpec::Core(rows)
            } else {
                OperatorSpec::Table(rows)
            }
        } else {
            return Err(self.unexpected("`kripke`, `table` or `core`"));
        };
        self.expect(&Tok::RBrace)?;
        Ok(PlayerDecl {
            name,
            spec,
            loc: Loc(Some(pos)),
        })
    }

    fn mapping(&mut self, what: &str) -> PResult<Vec<(Name, Name)>> {
        self.expect(&Tok::LBrace)?;
        let mut rows = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let s = self.name("a state name or `}`")?;
            self.expect(&Tok::Arrow)?;
            let v = self.name(what)?;
            self.eat(&Tok::Semi);
            rows.push((s, v));
        }
        Ok(rows)
    }

    fn signal(&mut self) -> PResult<SignalDecl> {
        let pos = self.keyword("signal")?;
        let name = self.name("a signal name")?;
        self.expect(&Tok::Colon)?;
        let codomain = self.set()?;
        let assignment = self.mapping("a value")?;
        self.keyword("family")?;
        self.expect(&Tok::LBrace)?;
        let mut family = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.peek() != &Tok::LBrace {
                return Err(self.unexpected("`{` or `}`"));
            }
            family.push(self.set()?);
            if !self.eat(&Tok::Comma) {
                self.eat(&Tok::Semi);
            }
        }
        Ok(SignalDecl {
            name,
            codomain,
            assignment,
            family,
            loc: Loc(Some(pos)),
        })
    }

    fn game(&mut self) -> PResult<GameDecl> {
        let pos = self.keyword("game")?;
        self.expect(&Tok::LBrace)?;
        let mut g = GameDecl {
            actions: Vec::new(),
            ranks: Vec::new(),
            strategies: Vec::new(),
            loc: Loc(Some(pos)),
        };
        while !self.eat(&Tok::RBrace) {
            if self.is_word("actions") {
                self.next();
                let player = self.name("a player name")?;
                self.expect(&Tok::Colon)?;
                let mut acts = Vec::new();
                while !self.eat(&Tok::Semi) {
                    acts.push(self.name("an action name or `;`")?);
                }
                g.actions.push((player, acts));
            } else if self.is_word("rank") {
                let pos = self.next().1;
                let player = self.name("a player name")?;
                self.expect(&Tok::LParen)?;
                let mut profile = vec![self.name("an action name")?];
                while !self.eat(&Tok::RParen) {
                    self.expect(&Tok::Comma)?;
                    profile.push(self.name("an action name")?);
                }
                self.expect(&Tok::Eq)?;
                let rank = self.integer()?;
                self.eat(&Tok::Semi);
                g.ranks.push(RankDecl {
                    player,
                    profile,
                    rank,
                    loc: Loc(Some(pos)),
                });
            } else if self.is_word("strategy") {
                let pos = self.next().1;
                let player = self.name("a player name")?;
                let moves = self.mapping("an action name")?;
                g.strategies.push(StrategyDecl {
                    player,
                    moves,
                    loc: Loc(Some(pos)),
                });
            } else {
                return Err(self.unexpected("`actions`, `rank`, `strategy` or `}`"));
            }
        }
        Ok(g)
    }
}
