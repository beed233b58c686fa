//! The canonical line-oriented `fwsys v1` text format and the move-script
//! dialect. Serialization is canonical: fixed section order, rows sorted
//! lexicographically by disc id, LF endings, base-10 integers; parse then
//! serialize is the identity on canonical files.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arc::{Arc, Face};
use crate::homology::{Generator, H2Class};
use crate::moves::{Move, PathSpec, Surface};
use crate::system::{Disc, DiscIx, Kind, System};
use crate::{Error, Result};

fn fmt_offset(c: &H2Class) -> String {
    let mut parts = Vec::new();
    for g in c.generators() {
        parts.push(match g {
            Generator::Clifford(d) => format!("C:{d}"),
            Generator::Linking(d) => format!("Z:{d}"),
            Generator::MoveSphere(d) => format!("S:{d}"),
        });
    }
    parts.join("+")
}

fn parse_offset(s: &str, line: usize) -> Result<H2Class> {
    let mut c = H2Class::zero();
    if s.is_empty() {
        return Ok(c);
    }
    for part in s.split('+') {
        let (tag, name) = part.split_once(':').ok_or(Error::Parse {
            line,
            msg: format!("bad offset term `{part}`"),
        })?;
        let g = match tag {
            "C" => Generator::Clifford(name.to_string()),
            "Z" => Generator::Linking(name.to_string()),
            "S" => Generator::MoveSphere(name.to_string()),
            _ => {
                return Err(Error::Parse { line, msg: format!("bad offset tag `{tag}`") });
            }
        };
        c.toggle(g);
    }
    Ok(c)
}

fn fmt_arc(a: &Arc) -> String {
    let face = match a.start_face {
        Face::U => "U",
        Face::D => "D",
    };
    let word = if a.word().is_empty() {
        String::from("-")
    } else {
        a.word().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
    };
    format!("{face} {} {} {word}", a.start, a.end)
}

fn parse_arc(fields: &[&str], line: usize) -> Result<Arc> {
    if fields.len() != 4 {
        return Err(Error::Parse { line, msg: String::from("arc wants: FACE START END WORD") });
    }
    let face = match fields[0] {
        "U" => Face::U,
        "D" => Face::D,
        other => return Err(Error::Parse { line, msg: format!("bad face `{other}`") }),
    };
    let start = parse_num(fields[1], line)?;
    let end = parse_num(fields[2], line)?;
    let word = if fields[3] == "-" {
        Vec::new()
    } else {
        fields[3]
            .split(',')
            .map(|t| parse_num(t, line))
            .collect::<Result<Vec<usize>>>()?
    };
    Ok(Arc::new(start, end, face, word))
}

fn parse_num<T: core::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("bad number `{s}`") })
}

/// Canonical serialization.
pub fn serialize(sys: &System) -> String {
    let mut out = String::from("fwsys v1\n");
    out.push_str(&format!("eyes {}\n", sys.eyes().len()));
    for (i, eye) in sys.eyes().iter().enumerate() {
        out.push_str(&format!("eye {} n {}\n", i + 1, eye.n));
    }
    for (&(r, g), &count) in sys.cross_points() {
        if count > 0 {
            out.push_str(&format!("xpoints {} {} {}\n", r + 1, g + 1, count));
        }
    }
    for (eye, names) in sys.w_order() {
        out.push_str(&format!("worder {} {}\n", eye + 1, names.join(",")));
    }
    let mut order: Vec<usize> = (0..sys.discs().len()).collect();
    order.sort_by(|&a, &b| sys.discs()[a].name.cmp(&sys.discs()[b].name));
    for &i in &order {
        let d = &sys.discs()[i];
        let kind = match d.kind {
            Kind::Finger => "F",
            Kind::Whitney => "W",
        };
        out.push_str(&format!(
            "disc {} kind={kind} reye={} geye={} gcorners={},{} rcorners={},{} germ={},{}",
            d.name,
            d.r_eye + 1,
            d.g_eye + 1,
            d.corners.0,
            d.corners.1,
            d.corners.0,
            d.corners.1,
            d.germ.0,
            d.germ.1,
        ));
        if !d.offset.is_zero() {
            out.push_str(&format!(" offset={}", fmt_offset(&d.offset)));
        }
        out.push('\n');
    }
    for (mat, tag) in [(sys.xg(), "xg"), (sys.xr(), "xr")] {
        for &i in &order {
            for &j in &order {
                if sys.discs()[i].name < sys.discs()[j].name && mat.get(i, j) != 0 {
                    out.push_str(&format!(
                        "{tag} {} {} {}\n",
                        sys.discs()[i].name,
                        sys.discs()[j].name,
                        mat.get(i, j)
                    ));
                }
            }
        }
    }
    for &i in &order {
        for &j in &order {
            if sys.discs()[i].name < sys.discs()[j].name && sys.m().get(i, j) {
                out.push_str(&format!(
                    "m {} {} 1\n",
                    sys.discs()[i].name,
                    sys.discs()[j].name
                ));
            }
        }
    }
    for &i in &order {
        let d = &sys.discs()[i];
        if let Some(a) = &d.g_arc {
            out.push_str(&format!("garc {} {}\n", d.name, fmt_arc(a)));
        }
        if let Some(a) = &d.r_arc {
            out.push_str(&format!("rarc {} {}\n", d.name, fmt_arc(a)));
        }
    }
    out
}

/// Parses the `fwsys v1` format. Accepts explicit zero matrix entries and
/// any disc order; the a_0 convention (Whitney-missed point at index 0) is
/// not re-derived here — systems store points as written.
pub fn parse(input: &str) -> Result<System> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut header = None;
    for (ln, line) in lines.by_ref() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        header = Some((ln, line));
        break;
    }
    match header {
        Some((_, "fwsys v1")) => {}
        Some((ln, other)) => {
            return Err(Error::Parse { line: ln, msg: format!("expected `fwsys v1`, got `{other}`") });
        }
        None => return Err(Error::Parse { line: 0, msg: String::from("empty input") }),
    }
    let mut eye_count: Option<usize> = None;
    let mut eye_sizes: Vec<Option<usize>> = Vec::new();
    struct PendingDisc {
        line: usize,
        disc: Disc,
    }
    let mut discs: Vec<PendingDisc> = Vec::new();
    let mut mat_lines: Vec<(usize, &str, String, String, u32)> = Vec::new();
    let mut arcs: Vec<(usize, bool, String, Arc)> = Vec::new();
    let mut xpoints: Vec<(usize, usize, usize)> = Vec::new();
    let mut worder: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "eyes" => {
                if fields.len() != 2 {
                    return Err(Error::Parse { line: ln, msg: String::from("eyes wants a count") });
                }
                let k: usize = parse_num(fields[1], ln)?;
                eye_count = Some(k);
                eye_sizes.resize(k, None);
            }
            "eye" => {
                if fields.len() != 4 || fields[2] != "n" {
                    return Err(Error::Parse { line: ln, msg: String::from("eye wants: eye I n N") });
                }
                let i: usize = parse_num(fields[1], ln)?;
                let n: usize = parse_num(fields[3], ln)?;
                if i == 0 || i > eye_sizes.len() {
                    return Err(Error::Parse { line: ln, msg: format!("eye {i} out of range") });
                }
                eye_sizes[i - 1] = Some(n);
            }
            "xpoints" => {
                if fields.len() != 4 {
                    return Err(Error::Parse { line: ln, msg: String::from("xpoints wants: R G COUNT") });
                }
                let r: usize = parse_num(fields[1], ln)?;
                let g: usize = parse_num(fields[2], ln)?;
                let c: usize = parse_num(fields[3], ln)?;
                if r == 0 || g == 0 {
                    return Err(Error::Parse { line: ln, msg: String::from("eyes are 1-based") });
                }
                xpoints.push((r - 1, g - 1, c));
            }
            "worder" => {
                if fields.len() != 3 {
                    return Err(Error::Parse { line: ln, msg: String::from("worder wants: EYE W1,W2,...") });
                }
                let i: usize = parse_num(fields[1], ln)?;
                if i == 0 {
                    return Err(Error::Parse { line: ln, msg: String::from("eyes are 1-based") });
                }
                worder.push((i - 1, fields[2].split(',').map(|s| s.to_string()).collect()));
            }
            "disc" => {
                discs.push(PendingDisc { line: ln, disc: parse_disc(&fields, ln)? });
            }
            "xg" | "xr" | "m" => {
                if fields.len() != 4 {
                    return Err(Error::Parse { line: ln, msg: format!("{} wants: A B VALUE", fields[0]) });
                }
                let v: u32 = parse_num(fields[3], ln)?;
                mat_lines.push((ln, fields[0], fields[1].to_string(), fields[2].to_string(), v));
            }
            "garc" | "rarc" => {
                if fields.len() != 6 {
                    return Err(Error::Parse { line: ln, msg: format!("{} wants: DISC FACE START END WORD", fields[0]) });
                }
                let arc = parse_arc(&fields[2..], ln)?;
                arcs.push((ln, fields[0] == "garc", fields[1].to_string(), arc));
            }
            other => {
                return Err(Error::Parse { line: ln, msg: format!("unknown directive `{other}`") });
            }
        }
    }
    let Some(k) = eye_count else {
        return Err(Error::Parse { line: 0, msg: String::from("missing `eyes` line") });
    };
    let mut sizes = Vec::with_capacity(k);
    for (i, s) in eye_sizes.iter().enumerate() {
        match s {
            Some(n) => sizes.push(*n),
            None => {
                return Err(Error::Parse { line: 0, msg: format!("missing size for eye {}", i + 1) });
            }
        }
    }
    let mut sys = System::new(&sizes);
    for (r, g, c) in xpoints {
        sys.set_cross_points(r, g, c);
    }
    for (eye, names) in worder {
        sys.set_w_order(eye, names);
    }
    for p in discs {
        if p.disc.r_eye >= k || p.disc.g_eye >= k {
            return Err(Error::Parse { line: p.line, msg: format!("disc {} references a missing eye", p.disc.name) });
        }
        sys.push_disc(p.disc);
    }
    for (ln, tag, a, b, v) in mat_lines {
        let ia = sys
            .disc_by_name(&a)
            .map_err(|_| Error::Parse { line: ln, msg: format!("unknown disc `{a}`") })?;
        let ib = sys
            .disc_by_name(&b)
            .map_err(|_| Error::Parse { line: ln, msg: format!("unknown disc `{b}`") })?;
        match tag {
            "xg" => sys.xg_mut().set(ia.0, ib.0, v),
            "xr" => sys.xr_mut().set(ia.0, ib.0, v),
            _ => {
                if v > 1 {
                    return Err(Error::Parse { line: ln, msg: String::from("m entries are mod 2") });
                }
                sys.m_mut().set(ia.0, ib.0, v == 1);
            }
        }
    }
    for (ln, is_g, name, arc) in arcs {
        let d = sys
            .disc_by_name(&name)
            .map_err(|_| Error::Parse { line: ln, msg: format!("unknown disc `{name}`") })?;
        if is_g {
            sys.disc_mut(d).g_arc = Some(arc);
        } else {
            sys.disc_mut(d).r_arc = Some(arc);
        }
    }
    Ok(sys)
}

fn parse_disc(fields: &[&str], ln: usize) -> Result<Disc> {
    if fields.len() < 2 {
        return Err(Error::Parse { line: ln, msg: String::from("disc wants a name") });
    }
    let name = fields[1].to_string();
    let mut kind = None;
    let mut r_eye = None;
    let mut g_eye = None;
    let mut gcorners = None;
    let mut rcorners = None;
    let mut germ = (0i64, 0i64);
    let mut offset = H2Class::zero();
    for f in &fields[2..] {
        let (key, val) = f.split_once('=').ok_or(Error::Parse {
            line: ln,
            msg: format!("bad disc field `{f}`"),
        })?;
        match key {
            "kind" => {
                kind = Some(match val {
                    "F" => Kind::Finger,
                    "W" => Kind::Whitney,
                    _ => {
                        return Err(Error::Parse { line: ln, msg: format!("bad kind `{val}`") });
                    }
                })
            }
            "reye" => r_eye = Some(parse_num::<usize>(val, ln)?),
            "geye" => g_eye = Some(parse_num::<usize>(val, ln)?),
            "gcorners" | "rcorners" => {
                let (a, b) = val.split_once(',').ok_or(Error::Parse {
                    line: ln,
                    msg: format!("bad corners `{val}`"),
                })?;
                let pair = (parse_num::<usize>(a, ln)?, parse_num::<usize>(b, ln)?);
                let pair = (pair.0.min(pair.1), pair.0.max(pair.1));
                if key == "gcorners" {
                    gcorners = Some(pair);
                } else {
                    rcorners = Some(pair);
                }
            }
            "germ" => {
                let (p, q) = val.split_once(',').ok_or(Error::Parse {
                    line: ln,
                    msg: format!("bad germ `{val}`"),
                })?;
                germ = (parse_num(p, ln)?, parse_num(q, ln)?);
            }
            "offset" => offset = parse_offset(val, ln)?,
            _ => {
                return Err(Error::Parse { line: ln, msg: format!("unknown disc field `{key}`") });
            }
        }
    }
    let kind = kind.ok_or(Error::Parse { line: ln, msg: String::from("disc needs kind=") })?;
    let r_eye = r_eye.ok_or(Error::Parse { line: ln, msg: String::from("disc needs reye=") })?;
    let g_eye = g_eye.ok_or(Error::Parse { line: ln, msg: String::from("disc needs geye=") })?;
    if r_eye == 0 || g_eye == 0 {
        return Err(Error::Parse { line: ln, msg: String::from("eyes are 1-based") });
    }
    let gc = gcorners.ok_or(Error::Parse { line: ln, msg: String::from("disc needs gcorners=") })?;
    let rc = rcorners.unwrap_or(gc);
    if gc != rc {
        return Err(Error::Parse {
            line: ln,
            msg: format!("disc {name}: gcorners and rcorners must name the same two points"),
        });
    }
    Ok(Disc {
        name,
        kind,
        r_eye: r_eye - 1,
        g_eye: g_eye - 1,
        corners: gc,
        germ,
        offset,
        g_arc: None,
        r_arc: None,
    })
}

// --- scripts ----------------------------------------------------------------

fn fmt_path(p: &PathSpec) -> String {
    if p.crossings.is_empty() {
        String::from("clear")
    } else {
        p.crossings
            .iter()
            .map(|(n, c)| format!("{n}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_path(s: &str, ln: usize) -> Result<PathSpec> {
    if s == "clear" {
        return Ok(PathSpec::clear());
    }
    let mut crossings = Vec::new();
    for part in s.split(',') {
        let (n, c) = part.split_once(':').ok_or(Error::Parse {
            line: ln,
            msg: format!("bad path term `{part}`"),
        })?;
        crossings.push((n.to_string(), parse_num(c, ln)?));
    }
    Ok(PathSpec { crossings })
}

pub fn serialize_move(mv: &Move) -> String {
    match mv {
        Move::Slide { surface, mover, over, twist, path } => format!(
            "{}slide mover={mover} over={over} twist={twist} path={}",
            surface.label(),
            fmt_path(path)
        ),
        Move::Swing { surface, mover, target } => {
            format!("{}swing mover={mover} target={target}", surface.label())
        }
        Move::Rotate { disc, surface, corner, sign } => format!(
            "{}rot disc={disc} corner={corner} sign={}",
            surface.label(),
            if *sign >= 0 { "+" } else { "-" }
        ),
        Move::CliffordAdd { target, source, count } => {
            format!("cliff target={target} source={source} count={count}")
        }
        Move::SphereSlide { mover, over } => format!("sslide mover={mover} over={over}"),
        Move::Switch { eye, order } => {
            format!("switch eye={} order={}", eye + 1, order.join(","))
        }
        Move::Birth { eye } => format!("birth eye={}", eye + 1),
        Move::Death { eye, f, w } => format!("death eye={} pair={f},{w}", eye + 1),
        Move::X3 { eye, at } => format!("x3 eye={} at={at}", eye + 1),
        Move::X3Remove { eye, f, w } => format!("x3rm eye={} pair={f},{w}", eye + 1),
        Move::Saddle { eye, x, y } => format!("saddle eye={} x={x} y={y}", eye + 1),
        Move::Spin { eye, src, targets } => {
            format!("spin eye={} src={src} targets={}", eye + 1, targets.join(","))
        }
    }
}

pub fn serialize_script(script: &[Move]) -> String {
    let mut out = String::new();
    for mv in script {
        out.push_str(&serialize_move(mv));
        out.push('\n');
    }
    out
}

pub fn parse_script(input: &str) -> Result<Vec<Move>> {
    let mut out = Vec::new();
    for (ln0, line) in input.lines().enumerate() {
        let ln = ln0 + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_move_line(line, ln)?);
    }
    Ok(out)
}

pub fn parse_move_line(line: &str, ln: usize) -> Result<Move> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let mut kv = alloc::collections::BTreeMap::new();
    for f in &fields[1..] {
        let (k, v) = f.split_once('=').ok_or(Error::Parse {
            line: ln,
            msg: format!("bad move field `{f}`"),
        })?;
        kv.insert(k, v);
    }
    let need = |k: &str| -> Result<&str> {
        kv.get(k).copied().ok_or(Error::Parse { line: ln, msg: format!("missing {k}=") })
    };
    let eye = |k: &str| -> Result<usize> {
        let v: usize = parse_num(need(k)?, ln)?;
        if v == 0 {
            return Err(Error::Parse { line: ln, msg: String::from("eyes are 1-based") });
        }
        Ok(v - 1)
    };
    let pair = |k: &str| -> Result<(String, String)> {
        let v = need(k)?;
        let (a, b) = v.split_once(',').ok_or(Error::Parse {
            line: ln,
            msg: format!("bad pair `{v}`"),
        })?;
        Ok((a.to_string(), b.to_string()))
    };
    let surface = |tag: &str| -> Option<Surface> {
        match tag.as_bytes().first() {
            Some(b'g') => Some(Surface::G),
            Some(b'r') => Some(Surface::R),
            _ => None,
        }
    };
    match fields[0] {
        t @ ("gslide" | "rslide") => Ok(Move::Slide {
            surface: surface(t).unwrap(),
            mover: need("mover")?.to_string(),
            over: need("over")?.to_string(),
            twist: kv.get("twist").map(|v| parse_num(v, ln)).transpose()?.unwrap_or(0),
            path: kv.get("path").map(|v| parse_path(v, ln)).transpose()?.unwrap_or_default(),
        }),
        t @ ("gswing" | "rswing") => Ok(Move::Swing {
            surface: surface(t).unwrap(),
            mover: need("mover")?.to_string(),
            target: need("target")?.to_string(),
        }),
        t @ ("grot" | "rrot") => Ok(Move::Rotate {
            disc: need("disc")?.to_string(),
            surface: surface(t).unwrap(),
            corner: parse_num(need("corner")?, ln)?,
            sign: match need("sign")? {
                "+" | "+1" => 1,
                "-" | "-1" => -1,
                other => {
                    return Err(Error::Parse { line: ln, msg: format!("bad sign `{other}`") });
                }
            },
        }),
        "cliff" => Ok(Move::CliffordAdd {
            target: need("target")?.to_string(),
            source: need("source")?.to_string(),
            count: kv.get("count").map(|v| parse_num(v, ln)).transpose()?.unwrap_or(1),
        }),
        "sslide" => Ok(Move::SphereSlide {
            mover: need("mover")?.to_string(),
            over: need("over")?.to_string(),
        }),
        "switch" => Ok(Move::Switch {
            eye: eye("eye")?,
            order: match kv.get("order") {
                Some(v) if !v.is_empty() => v.split(',').map(|s| s.to_string()).collect(),
                _ => Vec::new(),
            },
        }),
        "birth" => Ok(Move::Birth { eye: eye("eye")? }),
        "death" => {
            let (f, w) = pair("pair")?;
            Ok(Move::Death { eye: eye("eye")?, f, w })
        }
        "x3" => Ok(Move::X3 { eye: eye("eye")?, at: parse_num(need("at")?, ln)? }),
        "x3rm" => {
            let (f, w) = pair("pair")?;
            Ok(Move::X3Remove { eye: eye("eye")?, f, w })
        }
        "saddle" => Ok(Move::Saddle {
            eye: eye("eye")?,
            x: parse_num(need("x")?, ln)?,
            y: parse_num(need("y")?, ln)?,
        }),
        "spin" => Ok(Move::Spin {
            eye: eye("eye")?,
            src: need("src")?.to_string(),
            targets: match kv.get("targets") {
                Some(v) if !v.is_empty() => v.split(',').map(|s| s.to_string()).collect(),
                _ => Vec::new(),
            },
        }),
        other => Err(Error::Parse { line: ln, msg: format!("unknown move `{other}`") }),
    }
}

/// FNV-1a over the canonical serialization; stable input fingerprint for
/// reports and corpus file names.
pub fn content_hash(sys: &System) -> u64 {
    let text = serialize(sys);
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The built-in key example: one eye, one finger/Whitney pair whose interiors
/// meet once.
pub fn key_example() -> System {
    let mut sys = System::standard(&[1]);
    let f = sys.disc_by_name("f1").unwrap();
    let w = sys.disc_by_name("w1").unwrap();
    sys.m_mut().set(f.0, w.0, true);
    sys
}

/// The built-in standard example: same boundaries, disjoint interiors.
pub fn standard_example() -> System {
    System::standard(&[1])
}

/// The key example placed in eye `j` (0-based) of a k-eye system, all other
/// eyes standard with one disc pair.
pub fn key_in_eye(k: usize, j: usize) -> System {
    let sizes: Vec<usize> = core::iter::repeat(1).take(k).collect();
    let mut sys = System::standard(&sizes);
    let (f, w) = eye_pair(&sys, j);
    sys.m_mut().set(f.0, w.0, true);
    sys
}

fn eye_pair(sys: &System, eye: usize) -> (DiscIx, DiscIx) {
    let discs = sys.eye_discs(eye);
    let f = discs
        .iter()
        .copied()
        .find(|&d| sys.disc(d).kind == Kind::Finger)
        .expect("eye has a finger disc");
    let w = discs
        .iter()
        .copied()
        .find(|&d| sys.disc(d).kind == Kind::Whitney)
        .expect("eye has a Whitney disc");
    (f, w)
}
