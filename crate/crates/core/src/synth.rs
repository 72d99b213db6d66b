//! Seeded random MiniTalk programs and mutations, for property tests,
//! benchmarks and examples.
//!
//! Programs are plain data rendered to source text. Superclasses and used
//! traits always have a lower id than their user, so generated programs
//! never contain cycles; mutations keep that property. Dangling references
//! after a removal are allowed and only produce warnings.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::lang::{parse, Codebase};

/// Selector pool. Arity is fixed per name so a class never defines two
/// arities of the same name by accident.
pub const SELECTORS: &[(&str, usize)] = &[
    ("log", 1),
    ("logAll", 1),
    ("accepts", 1),
    ("run", 0),
    ("step", 0),
    ("add", 2),
    ("size", 0),
    ("at", 1),
    ("put", 2),
    ("reset", 0),
    ("value", 0),
    ("print", 1),
];

const CLASS_SELECTORS: &[(&str, usize)] =
    &[("new", 0), ("create", 1), ("default", 0), ("named", 1)];

#[derive(Clone, Debug)]
pub struct Config {
    pub classes: std::ops::RangeInclusive<usize>,
    pub traits: std::ops::RangeInclusive<usize>,
    pub methods_per_class: std::ops::RangeInclusive<usize>,
    pub methods_per_trait: std::ops::RangeInclusive<usize>,
    pub statements: std::ops::RangeInclusive<usize>,
    /// Chance that a class method slot is class-side.
    pub class_side_ratio: f64,
}

impl Config {
    /// At most 30 classes, 5 traits and 8 methods per class.
    pub fn small() -> Self {
        Config {
            classes: 1..=30,
            traits: 0..=5,
            methods_per_class: 0..=8,
            methods_per_trait: 0..=4,
            statements: 0..=4,
            class_side_ratio: 0.15,
        }
    }

    /// Exactly `classes` classes with `methods` instance methods each and no traits.
    pub fn scale(classes: usize, methods: usize) -> Self {
        Config {
            classes: classes..=classes,
            traits: 0..=0,
            methods_per_class: methods..=methods,
            methods_per_trait: 0..=0,
            statements: 1..=4,
            class_side_ratio: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodSpec {
    pub class_side: bool,
    pub name: String,
    pub params: Vec<String>,
    pub body: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub id: usize,
    pub super_id: Option<usize>,
    pub uses: Vec<usize>,
    pub ivars: Vec<String>,
    pub cvars: Vec<String>,
    pub methods: Vec<MethodSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraitSpec {
    pub id: usize,
    pub uses: Vec<usize>,
    pub methods: Vec<MethodSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub classes: Vec<ClassSpec>,
    pub traits: Vec<TraitSpec>,
    next_class: usize,
    next_trait: usize,
    next_var: usize,
}

pub fn class_name(id: usize) -> String {
    format!("C{id}")
}

pub fn trait_name(id: usize) -> String {
    format!("T{id}")
}

fn params_for(arity: usize) -> Vec<String> {
    ["a", "b", "c"][..arity]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

struct Ctx<'p> {
    program: &'p Program,
    params: &'p [String],
    vars: Vec<String>,
    has_super: bool,
}

fn atom(rng: &mut StdRng, ctx: &Ctx) -> String {
    match rng.gen_range(0..4) {
        0 if !ctx.params.is_empty() => ctx.params.choose(rng).unwrap().clone(),
        1 if !ctx.vars.is_empty() => ctx.vars.choose(rng).unwrap().clone(),
        2 => format!("\"s{}\"", rng.gen_range(0..10)),
        _ => rng.gen_range(0..100).to_string(),
    }
}

fn call(rng: &mut StdRng, receiver: &str, ctx: &Ctx, selectors: &[(&str, usize)]) -> String {
    let (name, arity) = *selectors.choose(rng).unwrap();
    let args: Vec<String> = (0..arity).map(|_| atom(rng, ctx)).collect();
    format!("{receiver}.{name}({})", args.join(", "))
}

fn statement(rng: &mut StdRng, ctx: &Ctx, selectors: &[(&str, usize)]) -> String {
    loop {
        match rng.gen_range(0..6) {
            0 | 1 => return format!("{};", call(rng, "self", ctx, selectors)),
            2 if ctx.has_super => return format!("{};", call(rng, "super", ctx, selectors)),
            3 if !ctx.params.is_empty() => {
                let p = ctx.params.choose(rng).unwrap().clone();
                return format!("{};", call(rng, &p, ctx, selectors));
            }
            4 if !ctx.vars.is_empty() => {
                let v = ctx.vars.choose(rng).unwrap().clone();
                let value = if rng.gen_bool(0.3) {
                    call(rng, "self", ctx, selectors)
                } else {
                    atom(rng, ctx)
                };
                return format!("{v} = {value};");
            }
            5 if !ctx.program.classes.is_empty() => {
                let c = class_name(ctx.program.classes.choose(rng).unwrap().id);
                return format!("{};", call(rng, &c, ctx, CLASS_SELECTORS));
            }
            _ => {}
        }
    }
}

impl Program {
    pub fn generate(seed: u64, config: &Config) -> Program {
        let mut rng = StdRng::seed_from_u64(seed);
        Program::generate_with(&mut rng, config)
    }

    pub fn generate_with(rng: &mut StdRng, config: &Config) -> Program {
        let mut p = Program {
            classes: vec![],
            traits: vec![],
            next_class: 0,
            next_trait: 0,
            next_var: 0,
        };
        for _ in 0..rng.gen_range(config.traits.clone()) {
            let id = p.next_trait;
            p.next_trait += 1;
            let uses = if id > 0 && rng.gen_bool(0.3) {
                vec![rng.gen_range(0..id)]
            } else {
                vec![]
            };
            let mut t = TraitSpec {
                id,
                uses,
                methods: vec![],
            };
            let n = rng.gen_range(config.methods_per_trait.clone());
            for (name, arity) in SELECTORS.choose_multiple(rng, n) {
                let m = p.method(rng, config, false, name, *arity, vec![], false);
                t.methods.push(m);
            }
            p.traits.push(t);
        }
        for _ in 0..rng.gen_range(config.classes.clone()) {
            let class = p.new_class(rng, config);
            p.classes.push(class);
        }
        p
    }

    fn fresh_var(&mut self, class_side: bool) -> String {
        self.next_var += 1;
        if class_side {
            format!("K{}", self.next_var)
        } else {
            format!("v{}", self.next_var)
        }
    }

    fn class(&self, id: usize) -> Option<&ClassSpec> {
        self.classes.iter().find(|c| c.id == id)
    }

    fn visible_vars(&self, start: Option<usize>, class_side: bool) -> Vec<String> {
        let mut out = vec![];
        let mut cur = start.and_then(|id| self.class(id));
        let mut guard = 0;
        while let Some(c) = cur {
            out.extend(
                if class_side {
                    c.cvars.iter()
                } else {
                    c.ivars.iter()
                }
                .cloned(),
            );
            cur = c.super_id.and_then(|id| self.class(id));
            guard += 1;
            if guard > self.classes.len() {
                break;
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn method(
        &self,
        rng: &mut StdRng,
        config: &Config,
        class_side: bool,
        name: &str,
        arity: usize,
        vars: Vec<String>,
        has_super: bool,
    ) -> MethodSpec {
        let params = params_for(arity);
        let ctx = Ctx {
            program: self,
            params: &params,
            vars,
            has_super,
        };
        let selectors = if class_side {
            CLASS_SELECTORS
        } else {
            SELECTORS
        };
        let body = (0..rng.gen_range(config.statements.clone()))
            .map(|_| statement(rng, &ctx, selectors))
            .collect();
        MethodSpec {
            class_side,
            name: name.to_string(),
            params,
            body,
        }
    }

    fn new_class(&mut self, rng: &mut StdRng, config: &Config) -> ClassSpec {
        let id = self.next_class;
        self.next_class += 1;
        let super_id = if !self.classes.is_empty() && rng.gen_bool(0.8) {
            Some(self.classes.choose(rng).unwrap().id)
        } else {
            None
        };
        let uses = if !self.traits.is_empty() && rng.gen_bool(0.3) {
            vec![self.traits.choose(rng).unwrap().id]
        } else {
            vec![]
        };
        let ivars = (0..rng.gen_range(0..=2))
            .map(|_| self.fresh_var(false))
            .collect();
        let cvars = (0..rng.gen_range(0..=1))
            .map(|_| self.fresh_var(true))
            .collect();
        let mut class = ClassSpec {
            id,
            super_id,
            uses,
            ivars,
            cvars,
            methods: vec![],
        };
        let n = rng.gen_range(config.methods_per_class.clone());
        let mut instance = SELECTORS.to_vec();
        instance.shuffle(rng);
        let mut class_side = CLASS_SELECTORS.to_vec();
        class_side.shuffle(rng);
        for _ in 0..n {
            let side = rng.gen_bool(config.class_side_ratio) && !class_side.is_empty();
            let Some((name, arity)) = (if side {
                class_side.pop()
            } else {
                instance.pop()
            }) else {
                break;
            };
            let m = self.method_for(rng, config, &class, side, name, arity);
            class.methods.push(m);
        }
        class
    }

    fn method_for(
        &self,
        rng: &mut StdRng,
        config: &Config,
        class: &ClassSpec,
        class_side: bool,
        name: &str,
        arity: usize,
    ) -> MethodSpec {
        let mut vars: Vec<String> = if class_side {
            class.cvars.clone()
        } else {
            class.ivars.clone()
        };
        vars.extend(self.visible_vars(class.super_id, class_side));
        self.method(
            rng,
            config,
            class_side,
            name,
            arity,
            vars,
            class.super_id.is_some(),
        )
    }

    /// A copy with one to four random edits applied.
    pub fn mutate(&self, rng: &mut StdRng, config: &Config) -> Program {
        let mut p = self.clone();
        for _ in 0..rng.gen_range(1..=4) {
            p.mutate_once(rng, config);
        }
        p
    }

    fn mutate_once(&mut self, rng: &mut StdRng, config: &Config) {
        if self.classes.is_empty() {
            let c = self.new_class(rng, config);
            self.classes.push(c);
            return;
        }
        let ci = rng.gen_range(0..self.classes.len());
        match rng.gen_range(0..9) {
            0 | 1 => {
                if self.classes[ci].methods.is_empty() {
                    return;
                }
                let mi = rng.gen_range(0..self.classes[ci].methods.len());
                let old = self.classes[ci].methods[mi].clone();
                let m = self.method_for(
                    rng,
                    config,
                    &self.classes[ci],
                    old.class_side,
                    &old.name,
                    old.params.len(),
                );
                self.classes[ci].methods[mi] = m;
            }
            2 => {
                let class = &self.classes[ci];
                let free: Vec<_> = SELECTORS
                    .iter()
                    .filter(|(n, _)| !class.methods.iter().any(|m| !m.class_side && m.name == *n))
                    .collect();
                if let Some((name, arity)) = free.choose(rng) {
                    let m = self.method_for(rng, config, class, false, name, *arity);
                    self.classes[ci].methods.push(m);
                }
            }
            3 => {
                let methods = &mut self.classes[ci].methods;
                if !methods.is_empty() {
                    let mi = rng.gen_range(0..methods.len());
                    methods.remove(mi);
                }
            }
            4 => {
                let c = self.new_class(rng, config);
                self.classes.push(c);
            }
            5 => {
                self.classes.remove(ci);
            }
            6 => {
                let id = self.classes[ci].id;
                let lower: Vec<usize> = self
                    .classes
                    .iter()
                    .map(|c| c.id)
                    .filter(|&o| o < id)
                    .collect();
                self.classes[ci].super_id = if lower.is_empty() || rng.gen_bool(0.2) {
                    None
                } else {
                    Some(*lower.choose(rng).unwrap())
                };
            }
            7 => {
                if let Some(t) = self.traits.choose(rng).map(|t| t.id) {
                    let uses = &mut self.classes[ci].uses;
                    if let Some(pos) = uses.iter().position(|&u| u == t) {
                        uses.remove(pos);
                    } else {
                        uses.push(t);
                    }
                }
            }
            _ => {
                let v = self.fresh_var(false);
                self.classes[ci].ivars.push(v);
            }
        }
    }

    pub fn method_count(&self) -> usize {
        self.classes.iter().map(|c| c.methods.len()).sum::<usize>()
            + self.traits.iter().map(|t| t.methods.len()).sum::<usize>()
    }

    pub fn source(&self) -> String {
        let mut s = String::new();
        for t in &self.traits {
            let _ = write!(s, "trait {}", trait_name(t.id));
            let _ = writeln!(s, " {{");
            if !t.uses.is_empty() {
                let names: Vec<_> = t.uses.iter().map(|&u| trait_name(u)).collect();
                let _ = writeln!(s, "  uses {};", names.join(", "));
            }
            write_methods(&mut s, &t.methods);
            s.push_str("}\n");
        }
        for c in &self.classes {
            let _ = write!(s, "class {}", class_name(c.id));
            if let Some(sup) = c.super_id {
                let _ = write!(s, " extends {}", class_name(sup));
            }
            s.push_str(" {\n");
            if !c.uses.is_empty() {
                let names: Vec<_> = c.uses.iter().map(|&u| trait_name(u)).collect();
                let _ = writeln!(s, "  uses {};", names.join(", "));
            }
            if !c.ivars.is_empty() {
                let _ = writeln!(s, "  vars {};", c.ivars.join(", "));
            }
            if !c.cvars.is_empty() {
                let _ = writeln!(s, "  classvars {};", c.cvars.join(", "));
            }
            write_methods(&mut s, &c.methods);
            s.push_str("}\n");
        }
        s
    }

    /// Parses the rendered source. Generated programs are always valid.
    pub fn codebase(&self, label: &str) -> Codebase {
        parse(&self.source(), label).expect("generated programs parse")
    }
}

fn write_methods(s: &mut String, methods: &[MethodSpec]) {
    for m in methods {
        let kw = if m.class_side {
            "classmethod"
        } else {
            "method"
        };
        let _ = writeln!(s, "  {kw} {}({}) {{", m.name, m.params.join(", "));
        for stmt in &m.body {
            let _ = writeln!(s, "    {stmt}");
        }
        s.push_str("  }\n");
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_programs_are_valid() {
        for seed in 0..50 {
            let p = Program::generate(seed, &Config::small());
            let cb = p.codebase("gen");
            assert!(
                !cb.has_errors(),
                "{seed}: {:?}",
                cb.errors().collect::<Vec<_>>()
            );
            assert!(p.classes.len() <= 30 && p.traits.len() <= 5);
            assert!(p.classes.iter().all(|c| c.methods.len() <= 8));
            let mut r = rng(seed);
            let q = p.mutate(&mut r, &Config::small());
            assert!(!q.codebase("mut").has_errors());
        }
    }

    #[test]
    fn generation_is_seeded() {
        let a = Program::generate(7, &Config::small()).source();
        assert_eq!(a, Program::generate(7, &Config::small()).source());
        assert_ne!(a, Program::generate(8, &Config::small()).source());
    }

    #[test]
    fn scale_config_counts() {
        let p = Program::generate(1, &Config::scale(200, 10));
        assert_eq!(p.classes.len(), 200);
        assert_eq!(p.method_count(), 2000);
    }
}
