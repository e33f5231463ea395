/// Square boolean matrix stored as packed rows of `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// Column indices set in row `i`, ascending.
    pub(crate) fn ones(&self, i: usize) -> Ones<'_> {
        Ones {
            row: self.row(i),
            word: 0,
            cur: self.row(i).first().copied().unwrap_or(0),
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `row(dst) |= row(src)`.
    fn or_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (a, b) in d.iter_mut().zip(s) {
            *a |= *b;
        }
    }

    /// Warshall's algorithm, in place.
    pub(crate) fn close_transitively(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.or_row(i, k);
                }
            }
        }
    }

    /// Transitive reduction of an acyclic, transitively closed relation.
    pub(crate) fn reduction(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.n);
        let mut reach = vec![0u64; self.words];
        for i in 0..self.n {
            reach.iter_mut().for_each(|w| *w = 0);
            for k in self.ones(i) {
                for (r, w) in reach.iter_mut().zip(self.row(k)) {
                    *r |= *w;
                }
            }
            let base = i * self.words;
            for (t, (&w, &r)) in self.row(i).iter().zip(&reach).enumerate() {
                out.data[base + t] = w & !r;
            }
        }
        out
    }

    pub(crate) fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.ones(i) {
                out.set(j, i);
            }
        }
        out
    }
}

pub(crate) struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}
