//! On-disk subring lattices, one file per ring at `<dir>/<sha256>.lattice`.
//!
//! Layout, all integers little-endian `u64`:
//! `"RCOV1" | order | len(key bytes) | key bytes | count | words per set | words..`
//! where the key bytes are the ring's canonical serialization.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringcover::subring::extend_closure;
use ringcover::{ElementSet, RingTable, SubringLattice};
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 5] = b"RCOV1";
const SPOT_CHECKS: usize = 100;

pub fn cache_key(ring: &RingTable) -> String {
    hex::encode(Sha256::digest(ring.canonical_bytes()))
}

pub fn encode(ring: &RingTable, lattice: &SubringLattice) -> Vec<u8> {
    let key = ring.canonical_bytes();
    let words = ring.order().div_ceil(64);
    let mut out = Vec::with_capacity(5 + 32 + key.len() + lattice.len() * words * 8);
    out.extend_from_slice(MAGIC);
    for v in [ring.order() as u64, key.len() as u64] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&key);
    for v in [lattice.len() as u64, words as u64] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for s in lattice.subrings() {
        for w in s.words() {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }
    out
}

struct Reader<'a>(&'a [u8]);

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8], String> {
        if self.0.len() < n {
            return Err("truncated file".into());
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Ok(head)
    }

    fn u64(&mut self) -> Result<u64, String> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn len(&mut self) -> Result<usize, String> {
        usize::try_from(self.u64()?).map_err(|_| "length out of range".to_string())
    }
}

pub fn decode(ring: &RingTable, bytes: &[u8]) -> Result<SubringLattice, String> {
    let mut r = Reader(bytes);
    if r.take(MAGIC.len())? != MAGIC {
        return Err("bad magic".into());
    }
    if r.len()? != ring.order() {
        return Err("order mismatch".into());
    }
    let key_len = r.len()?;
    if r.take(key_len)? != ring.canonical_bytes().as_slice() {
        return Err("ring mismatch".into());
    }
    let count = r.len()?;
    let words = r.len()?;
    if words != ring.order().div_ceil(64) {
        return Err("word count mismatch".into());
    }
    if count.checked_mul(words * 8) != Some(r.0.len()) {
        return Err("payload size mismatch".into());
    }
    let mut sets = Vec::with_capacity(count);
    for _ in 0..count {
        let ws = (0..words).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
        sets.push(ElementSet::from_words(ring.order(), ws).ok_or("stray bits")?);
    }
    let lattice = SubringLattice::from_subrings(ring, sets).map_err(|e| e.to_string())?;
    if lattice.len() != count {
        return Err("duplicate subrings".into());
    }
    Ok(lattice)
}

/// Samples closure facts the lattice must satisfy: members of a subring are
/// closed under `+` and `*`, and adjoining any element to a subring gives a
/// listed subring.
pub fn spot_check(ring: &RingTable, lattice: &SubringLattice, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs = lattice.subrings();
    for _ in 0..SPOT_CHECKS {
        let s = &subs[rng.gen_range(0..subs.len())];
        let members = s.to_vec();
        let x = members[rng.gen_range(0..members.len())];
        let y = members[rng.gen_range(0..members.len())];
        if !s.contains(ring.add(x, y)) || !s.contains(ring.mul(x, y)) {
            return Err("listed set is not a subring".into());
        }
        let z = ringcover::Elem::from_index(rng.gen_range(0..ring.order()));
        let joined = extend_closure(ring, s, z);
        if subs.binary_search_by(|t| t.len().cmp(&joined.len()).then_with(|| t.cmp(&joined))).is_err() {
            return Err("lattice is missing a subring".into());
        }
    }
    Ok(())
}

pub enum Lookup {
    Hit(SubringLattice),
    Miss,
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(LatticeCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, ring: &RingTable) -> PathBuf {
        self.dir.join(format!("{}.lattice", cache_key(ring)))
    }

    pub fn get(&self, ring: &RingTable, seed: u64) -> Lookup {
        let bytes = match fs::read(self.path(ring)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match decode(ring, &bytes).and_then(|l| spot_check(ring, &l, seed).map(|_| l)) {
            Ok(l) => Lookup::Hit(l),
            Err(e) => Lookup::Corrupt(e),
        }
    }

    /// Writes through a temporary file so concurrent writers never expose a
    /// partial file.
    pub fn put(&self, ring: &RingTable, lattice: &SubringLattice) -> io::Result<()> {
        let path = self.path(ring);
        let tmp = self.dir.join(format!(
            ".{}.{}.{:?}.tmp",
            cache_key(ring),
            std::process::id(),
            std::thread::current().id()
        ));
        fs::write(&tmp, encode(ring, lattice))?;
        fs::rename(tmp, path)
    }
}
