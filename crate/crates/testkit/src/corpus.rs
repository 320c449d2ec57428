//! Seeded generator for mid-90s HTTP access logs in Common Log Format.
//!
//! The generator builds per-host browsing sessions with known structure and
//! reports ground truth alongside the raw lines, so pipeline tests can check
//! user/session recovery and cleaning decisions against an independent
//! bookkeeping of what was emitted:
//!
//! * hosts are distinct, so host-keyed user identification must find exactly
//!   `truth.hosts` users;
//! * consecutive page requests inside a session are at most 25 minutes
//!   apart and sessions of one host are at least 45 minutes apart, so a
//!   30-minute timeout must recover exactly `truth.sessions` sessions;
//! * every line is labelled keep/remove under the default cleaning rules
//!   (media suffixes, non-2xx/3xx statuses, non-GET methods) at generation
//!   time, independently of the production policy code.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use chrono::{FixedOffset, TimeZone};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const PAGES: &[(u32, &str)] = &[
    (90, "/shuttle/countdown/"),
    (55, "/shuttle/missions/sts-69/mission-sts-69.html"),
    (50, "/shuttle/missions/sts-70/mission-sts-70.html"),
    (45, "/shuttle/missions/missions.html"),
    (40, "/history/apollo/apollo.html"),
    (38, "/history/apollo/apollo-13/apollo-13.html"),
    (35, "/ksc.html"),
    (30, "/shuttle/technology/sts-newsref/stsref-toc.html"),
    (28, "/history/history.html"),
    (25, "/shuttle/missions/sts-71/mission-sts-71.html"),
    (22, "/shuttle/countdown/liftoff.html"),
    (20, "/facilities/lc39a.html"),
    (18, "/shuttle/missions/sts-69/images/images.html"),
    (16, "/history/apollo/apollo-11/apollo-11.html"),
    (15, "/facilities/tour.html"),
    (14, "/shuttle/resources/orbiters/endeavour.html"),
    (12, "/shuttle/missions/sts-73/mission-sts-73.html"),
    (12, "/history/gemini/gemini.html"),
    (10, "/shuttle/countdown/lps/fr.html"),
    (10, "/facts/about_ksc.html"),
    (9, "/shuttle/missions/sts-74/mission-sts-74.html"),
    (8, "/history/mercury/mercury.html"),
    (8, "/shuttle/resources/orbiters/columbia.html"),
    (7, "/cgi-bin/imagemap/countdown?102,174"),
    (6, "/shuttle/missions/sts-78/mission-sts-78.html"),
    (6, "/software/winvn/winvn.html"),
];

const IMAGES: &[&str] = &[
    "/images/NASA-logosmall.gif",
    "/images/KSC-logosmall.gif",
    "/images/MOSAIC-logosmall.gif",
    "/images/USA-logosmall.gif",
    "/images/WORLD-logosmall.gif",
    "/images/ksclogo-medium.gif",
    "/images/launch-logo.gif",
    "/images/ksclogosmall.gif",
    "/shuttle/countdown/count.gif",
    "/shuttle/countdown/video/livevideo.gif",
    "/images/shuttle-patch-logo.gif",
    "/history/apollo/images/apollo-logo1.gif",
    "/history/apollo/images/footprint-logo.gif",
    "/images/kscmap-small.gif",
    "/shuttle/missions/sts-69/sts-69-patch-small.gif",
    "/shuttle/missions/sts-70/sts-70-patch-small.gif",
    "/shuttle/missions/sts-71/sts-71-patch-small.gif",
    "/images/construct.gif",
    "/images/whatsnew.gif",
    "/shuttle/countdown/video/livevideo.mpg",
    "/images/lps-small.gif",
    "/images/op-logo-small.gif",
];

const BROKEN_PAGES: &[&str] = &[
    "/history/apollo/apollo-13.html",
    "/shuttle/missions/sts-68/mission-sts-68.html",
    "/pub/winvn/readme.txt",
    "/shuttle/resources/orbiters/discovery.html",
];

const USER_AGENTS: &[&str] = &[
    "Mozilla/1.22 (compatible; MSIE 2.0; Windows 95)",
    "Mozilla/2.0 (Windows; I; 32bit)",
    "Lynx/2.4 libwww/2.1.4",
    "NCSA_Mosaic/2.7b4 (X11;SunOS 5.4 sun4m)",
];

const REFERRERS: &[&str] = &[
    "-",
    "http://www.yahoo.com/Science/",
    "http://www.ksc.nasa.gov/ksc.html",
    "http://www.webcrawler.com/",
];

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub seed: u64,
    pub hosts: usize,
    pub days: u32,
    /// Per 100 hosts, how many log in combined (referrer + agent) format.
    pub eclf_hosts_per_100: u32,
    /// Malformed lines interleaved per 10k valid lines.
    pub malformed_per_10k: u32,
    /// Local calendar date the window opens on (offset is fixed at -0400).
    pub start_ymd: (i32, u32, u32),
}

impl CorpusConfig {
    /// Scale of the 1-10 Aug 95 NASA log: ~5.4k hosts over ten days.
    pub fn nasa_aug95() -> Self {
        CorpusConfig {
            seed: 19950801,
            hosts: 5400,
            days: 10,
            eclf_hosts_per_100: 0,
            malformed_per_10k: 20,
            start_ymd: (1995, 8, 1),
        }
    }

    /// A two-day, few-dozen-host corpus for quick tests.
    pub fn small(seed: u64) -> Self {
        CorpusConfig {
            seed,
            hosts: 40,
            days: 2,
            eclf_hosts_per_100: 30,
            malformed_per_10k: 50,
            start_ymd: (1995, 7, 1),
        }
    }
}

/// Ground truth recorded while generating.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Truth {
    pub total_lines: usize,
    pub malformed_lines: usize,
    pub hosts: usize,
    pub sessions: usize,
    /// Lines surviving the default cleaning rules.
    pub kept_lines: usize,
    pub removed_suffix: usize,
    pub removed_status: usize,
    pub removed_method: usize,
}

pub struct Corpus {
    pub lines: Vec<String>,
    pub truth: Truth,
}

impl Corpus {
    pub fn text(&self) -> String {
        let mut s = String::with_capacity(self.lines.iter().map(|l| l.len() + 1).sum());
        for line in &self.lines {
            s.push_str(line);
            s.push('\n');
        }
        s
    }

    pub fn write_plain(&self, path: &Path) -> io::Result<()> {
        let mut f = File::create(path)?;
        f.write_all(self.text().as_bytes())
    }

    pub fn write_gzip(&self, path: &Path) -> io::Result<()> {
        let f = File::create(path)?;
        let mut enc = flate2::write::GzEncoder::new(f, flate2::Compression::fast());
        enc.write_all(self.text().as_bytes())?;
        enc.finish().map(|_| ())
    }
}

struct Event {
    ts: i64,
    seq: usize,
    line: String,
    kept: bool,
}

fn host_name(i: usize) -> String {
    match i % 8 {
        0 => format!("ppp{}.onramp.net", i),
        1 => format!("piweba{}y.prodigy.com", i),
        2 => format!("slip{}.indirect.com", i),
        3 => format!("163.206.{}.{}", 1 + (i / 251) % 251, 1 + i % 251),
        4 => format!("dd{:02}-{:03}.compuserve.com", i % 37, i),
        5 => format!("net-1-{}.eden.com", i),
        6 => format!("www-c{}.proxy.aol.com", i),
        _ => format!("dialup{}.iway.net", i),
    }
}

fn pick_page(rng: &mut ChaCha8Rng) -> usize {
    let total: u32 = PAGES.iter().map(|(w, _)| w).sum();
    let mut roll = rng.gen_range(0..total);
    for (idx, (w, _)) in PAGES.iter().enumerate() {
        if roll < *w {
            return idx;
        }
        roll -= w;
    }
    PAGES.len() - 1
}

/// Inline images for a page; deterministic per page index.
fn page_images(page_idx: usize, count: usize) -> impl Iterator<Item = &'static str> {
    (0..count).map(move |k| IMAGES[(page_idx * 7 + k * 3) % IMAGES.len()])
}

fn fmt_ts(epoch: i64) -> String {
    let off = FixedOffset::west_opt(4 * 3600).unwrap();
    let dt = off.timestamp_opt(epoch, 0).unwrap();
    dt.format("%d/%b/%Y:%H:%M:%S %z").to_string()
}

struct LineSpec<'a> {
    host: &'a str,
    ts: i64,
    method: &'a str,
    url: &'a str,
    status: u16,
    bytes: Option<u64>,
    eclf: Option<(&'a str, &'a str)>,
}

fn render(spec: &LineSpec) -> String {
    let bytes = match spec.bytes {
        Some(b) => b.to_string(),
        None => "-".to_string(),
    };
    let mut line = format!(
        "{} - - [{}] \"{} {} HTTP/1.0\" {} {}",
        spec.host,
        fmt_ts(spec.ts),
        spec.method,
        spec.url,
        spec.status,
        bytes
    );
    if let Some((referrer, agent)) = spec.eclf {
        line.push_str(&format!(" \"{}\" \"{}\"", referrer, agent));
    }
    line
}

const MALFORMED: &[&str] = &[
    "truncated.host.net - - [01/Aug/1995:12:",
    "!!corrupted line with no recognizable structure!!",
    "h.example.com - - [32/Aug/1995:10:00:00 -0400] \"GET / HTTP/1.0\" 200 100",
    "h.example.com - - [01/Aug/1995:10:00:00 -0400] \"GET / HTTP/1.0\" xyz 100",
    "",
];

pub fn generate(cfg: &CorpusConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut truth = Truth {
        hosts: cfg.hosts,
        ..Truth::default()
    };

    let off = FixedOffset::west_opt(4 * 3600).unwrap();
    let (y, m, d) = cfg.start_ymd;
    let window_start = off
        .with_ymd_and_hms(y, m, d, 0, 0, 0)
        .unwrap()
        .timestamp();
    let window_len = i64::from(cfg.days) * 86_400;

    let mut events: Vec<Event> = Vec::new();
    let mut seq = 0usize;
    let mut push = |events: &mut Vec<Event>, ts: i64, line: String, kept: bool, seq: &mut usize| {
        events.push(Event {
            ts,
            seq: *seq,
            line,
            kept,
        });
        *seq += 1;
    };

    for h in 0..cfg.hosts {
        let host = host_name(h);
        let eclf_host = (h as u32 % 100) < cfg.eclf_hosts_per_100;
        let agent = USER_AGENTS[h % USER_AGENTS.len()];

        // A small pool of pages this host keeps coming back to.
        let pool: Vec<usize> = (0..2 + h % 4).map(|_| pick_page(&mut rng)).collect();

        let n_sessions = {
            let r: f64 = rng.gen();
            if r < 0.78 {
                1
            } else if r < 0.95 {
                2
            } else if r < 0.99 {
                3
            } else {
                4
            }
        };
        truth.sessions += n_sessions;

        let mut t = window_start + rng.gen_range(0..window_len.max(1));
        for _ in 0..n_sessions {
            let n_pages = {
                let r: f64 = rng.gen();
                if r < 0.10 {
                    1
                } else if r < 0.30 {
                    2
                } else if r < 0.56 {
                    3
                } else if r < 0.76 {
                    4
                } else if r < 0.90 {
                    5
                } else {
                    6
                }
            };
            let mut visited: Vec<usize> = Vec::new();
            for p in 0..n_pages {
                if p > 0 {
                    // Mostly short think times; the occasional long pause
                    // splits a visit but stays inside the session window.
                    let gap: i64 = {
                        let r: f64 = rng.gen();
                        if r < 0.70 {
                            rng.gen_range(20..300)
                        } else if r < 0.95 {
                            rng.gen_range(300..540)
                        } else {
                            rng.gen_range(660..1500)
                        }
                    };
                    t += gap;
                }
                let page_idx = if !visited.is_empty() && rng.gen::<f64>() < 0.15 {
                    visited[rng.gen_range(0..visited.len())]
                } else if rng.gen::<f64>() < 0.8 {
                    pool[rng.gen_range(0..pool.len())]
                } else {
                    pick_page(&mut rng)
                };
                visited.push(page_idx);
                let url = PAGES[page_idx].1;

                let status = if rng.gen::<f64>() < 0.92 { 200 } else { 304 };
                let bytes = if status == 304 {
                    None
                } else {
                    Some(rng.gen_range(500..60_000))
                };
                let referrer = REFERRERS[rng.gen_range(0..REFERRERS.len())];
                let eclf = eclf_host.then_some((referrer, agent));
                let line = render(&LineSpec {
                    host: &host,
                    ts: t,
                    method: "GET",
                    url,
                    status,
                    bytes,
                    eclf,
                });
                push(&mut events, t, line, true, &mut seq);
                truth.kept_lines += 1;

                let n_imgs = 2 + rng.gen_range(0..4);
                for (k, img) in page_images(page_idx, n_imgs).enumerate() {
                    let its = t + 1 + k as i64;
                    let istatus = {
                        let r: f64 = rng.gen();
                        if r < 0.82 {
                            200
                        } else if r < 0.95 {
                            304
                        } else {
                            404
                        }
                    };
                    let ibytes = if istatus == 200 {
                        Some(rng.gen_range(50..30_000))
                    } else {
                        None
                    };
                    let line = render(&LineSpec {
                        host: &host,
                        ts: its,
                        method: "GET",
                        url: img,
                        status: istatus,
                        bytes: ibytes,
                        eclf: eclf_host.then_some(("-", agent)),
                    });
                    push(&mut events, its, line, false, &mut seq);
                    truth.removed_suffix += 1;
                }

                // Occasional junk that cleaning drops for other reasons.
                let r: f64 = rng.gen();
                if r < 0.08 {
                    let jts = t + rng.gen_range(1..90);
                    let url = BROKEN_PAGES[rng.gen_range(0..BROKEN_PAGES.len())];
                    let line = render(&LineSpec {
                        host: &host,
                        ts: jts,
                        method: "GET",
                        url,
                        status: 404,
                        bytes: None,
                        eclf: eclf_host.then_some(("-", agent)),
                    });
                    push(&mut events, jts, line, false, &mut seq);
                    truth.removed_status += 1;
                } else if r < 0.10 {
                    let jts = t + rng.gen_range(1..90);
                    let method = if rng.gen::<bool>() { "HEAD" } else { "POST" };
                    let url = if method == "POST" {
                        "/cgi-bin/geturlstats.pl"
                    } else {
                        url
                    };
                    let line = render(&LineSpec {
                        host: &host,
                        ts: jts,
                        method,
                        url,
                        status: 200,
                        bytes: Some(rng.gen_range(100..2_000)),
                        eclf: eclf_host.then_some(("-", agent)),
                    });
                    push(&mut events, jts, line, false, &mut seq);
                    truth.removed_method += 1;
                }
            }
            // Next session of this host starts well past the 30-minute
            // timeout, measured from the last request.
            t += 2_700 + rng.gen_range(0..2 * 86_400);
        }
    }

    events.sort_by_key(|e| (e.ts, e.seq));

    let mut lines: Vec<String> = Vec::with_capacity(events.len());
    let every = if cfg.malformed_per_10k == 0 {
        usize::MAX
    } else {
        (10_000 / cfg.malformed_per_10k as usize).max(1)
    };
    let mut malformed_cycle = 0usize;
    for (i, ev) in events.iter().enumerate() {
        if i > 0 && i % every == 0 {
            lines.push(MALFORMED[malformed_cycle % MALFORMED.len()].to_string());
            malformed_cycle += 1;
            truth.malformed_lines += 1;
        }
        lines.push(ev.line.clone());
    }
    truth.total_lines = lines.len();

    Corpus { lines, truth }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_same_seed() {
        let a = generate(&CorpusConfig::small(7));
        let b = generate(&CorpusConfig::small(7));
        assert_eq!(a.lines, b.lines);
        assert_eq!(a.truth, b.truth);
    }

    #[test]
    fn truth_accounts_for_every_line() {
        let c = generate(&CorpusConfig::small(3));
        let t = &c.truth;
        assert_eq!(t.total_lines, c.lines.len());
        assert_eq!(
            t.total_lines,
            t.malformed_lines + t.kept_lines + t.removed_suffix + t.removed_status + t.removed_method
        );
        assert!(t.sessions >= t.hosts);
        assert!(t.kept_lines > 0);
    }

    #[test]
    fn nasa_profile_hits_target_scale() {
        let c = generate(&CorpusConfig::nasa_aug95());
        assert!(c.lines.len() >= 100_000, "lines = {}", c.lines.len());
        assert_eq!(c.truth.hosts, 5400);
        // Session multiplicity lands near the ~1.26 sessions/user ratio.
        let ratio = c.truth.sessions as f64 / c.truth.hosts as f64;
        assert!((1.1..1.5).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn timestamps_are_nondecreasing_for_valid_lines() {
        let mut cfg = CorpusConfig::small(11);
        cfg.malformed_per_10k = 0;
        let c = generate(&cfg);
        let mut last = None;
        for line in &c.lines {
            let start = line.find('[').unwrap();
            let end = line.find(']').unwrap();
            let ts = &line[start + 1..end];
            let dt = chrono::DateTime::parse_from_str(ts, "%d/%b/%Y:%H:%M:%S %z").unwrap();
            if let Some(prev) = last {
                assert!(dt.timestamp() >= prev);
            }
            last = Some(dt.timestamp());
        }
        assert!(last.is_some());
    }
}
