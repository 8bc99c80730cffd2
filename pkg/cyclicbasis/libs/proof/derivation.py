"""
C_{h,d} で成り立つ恒等式の導出証明を、恒等式基底から構成するモジュール。

不均衡な文字の数についての帰納法で証明を組み立てる。

- 均衡: 可換律の隣接互換だけで左辺を右辺に並べ替える。
- long: 不均衡な文字が1つなら phi を代入して右から掛ける。
  2つ以上なら補助の恒等式 (x^d = y^d または y^d x1...x_{h-d} = x^d x1...x_{h-d}) で
  y^d を x^d に置き換え、文字 y を均衡にする。
- uniform (h > d+2): psi を右辺の接頭辞に当てて、文字 x を均衡にする。

文字の選び方は全て辞書式順で最小のものにするので、同じ入力から同じ証明書ができる。
"""

from collections.abc import Mapping
from dataclasses import dataclass, replace

from kivy.logger import Logger as derivationLogger

from cyclicbasis.libs.words.word import Identity, Letter, Word, is_balanced, occurrences, power, unbalanced_letters
from cyclicbasis.libs.semigroup.cyclic import CyclicParams
from cyclicbasis.libs.semigroup.classify import Verdict, decide, is_long, is_uniform, min_unbalanced_occurrence
from cyclicbasis.libs.proof.basis import COM, PHI, X, Y, AxiomKind, BasisAxiom, fresh_letters
from cyclicbasis.libs.proof.basis import aux_equal_power, aux_equal_power_tail
from cyclicbasis.libs.proof.certificate import Certificate, MulLeft, MulRight, Reflexivity, Step, Substitute
from cyclicbasis.libs.proof.certificate import Symmetry, Transitivity, conclude
from cyclicbasis.libs.proof.certificate import Axiom as AxiomStep


#### derivation API用のエラーハンドラ
class DERIVATIONError(Exception):
    """derivationのエラーハンドラ"""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)

        derivationLogger.error(f"DERIVATIONError: {args}")


@dataclass(frozen=True)
class NotSatisfied:
    """
    恒等式が成り立たないため導出できないことを表す。

    :param Verdict verdict: 判定結果
    """

    verdict: Verdict


Letters = tuple[Letter, ...]


def _remove(word: Letters, letter: Letter, count: int) -> Letters:
    # 先頭から count 個の letter を取り除く
    result = list(word)
    for _ in range(count):
        result.remove(letter)
    return tuple(result)


def _references(step: Step) -> tuple[int, ...]:
    match step:
        case Substitute(step=ref) | MulLeft(step=ref) | MulRight(step=ref) | Symmetry(step=ref):
            return (ref,)
        case Transitivity(left=left, right=right):
            return (left, right)
        case _:
            return ()


def _renumber(step: Step, remap: Mapping[int, int]) -> Step:
    match step:
        case Substitute() | MulLeft() | MulRight() | Symmetry():
            return replace(step, step=remap[step.step])
        case Transitivity(left=left, right=right):
            return Transitivity(remap[left], remap[right])
        case _:
            return step


class _Builder:
    """
    証明書のステップを積み上げる。

    各ステップの恒等式は ``conclude`` で求め、積み上げる時点で規則の適用条件を確かめる。
    ``None`` は「両辺が字面で等しい（証明不要）」を表す。
    """

    def __init__(self, params: CyclicParams) -> None:
        self.params = params
        self.steps: list[Step] = []
        self.conclusions: list[Identity] = []
        self._axioms: dict[BasisAxiom, int] = {}
        self._swaps: dict[tuple[Letter, Letter], int] = {}
        self._aux: dict[str, int] = {}

    def add(self, step: Step) -> int:
        self.conclusions.append(conclude(self.params, step, self.conclusions))
        self.steps.append(step)
        return len(self.steps) - 1

    def axiom(self, axiom: BasisAxiom) -> int:
        if axiom not in self._axioms:
            self._axioms[axiom] = self.add(AxiomStep(axiom))
        return self._axioms[axiom]

    def substitute(self, ref: int, mapping: Mapping[Letter, Word | Letters]) -> int:
        """
        同時代入。恒等的な代入ならステップを追加しない。
        """

        if all(tuple(mapping.get(x, ())) == (x,) for x in self.conclusions[ref].letters):
            return ref
        return self.add(Substitute.of(ref, mapping))

    def embed(self, ref: int, prefix: Letters, suffix: Letters) -> int:
        """
        両辺に左から prefix、右から suffix を掛ける。空の語は掛けない。
        """

        if prefix:
            ref = self.add(MulLeft(ref, Word(prefix)))
        if suffix:
            ref = self.add(MulRight(ref, Word(suffix)))
        return ref

    def symmetry(self, ref: int | None) -> int | None:
        if ref is None:
            return None
        # 対称の対称は元のステップ
        step = self.steps[ref]
        if isinstance(step, Symmetry):
            return step.step
        return self.add(Symmetry(ref))

    def chain(self, first: int | None, second: int | None) -> int | None:
        if first is None:
            return second
        if second is None:
            return first
        return self.add(Transitivity(first, second))

    def swap(self, a: Letter, b: Letter) -> int:
        """
        a b = b a （可換律の代入例）。
        """

        if (a, b) not in self._swaps:
            self._swaps[(a, b)] = self.substitute(self.axiom(COM), {X: (a,), Y: (b,)})
        return self._swaps[(a, b)]

    def permute(self, word: Letters, target: Letters) -> int | None:
        """
        word = target を隣接互換の列で証明する。 target は word の並べ替え。
        """

        current = list(word)
        proof: int | None = None
        for i, letter in enumerate(target):
            j = current.index(letter, i)
            while j > i:
                a, b = current[j - 1], current[j]
                step = self.embed(self.swap(a, b), tuple(current[: j - 1]), tuple(current[j + 1 :]))
                proof = self.chain(proof, step)
                current[j - 1], current[j] = b, a
                j -= 1

        return proof

    def equal_power(self) -> int:
        """
        x^d = y^d （h <= d）を com と phi から導く。
        """

        if "equal_power" in self._aux:
            return self._aux["equal_power"]

        h, d = self.params.h, self.params.d
        # x^d y^h = y^h
        first = self.substitute(self.axiom(PHI), {X: (X,)} | {t: (Y,) for t in fresh_letters(h)})
        # x^d y^d = y^d
        if d > h:
            first = self.add(MulRight(first, power(Y, d - h)))
        # y^d x^d = x^d
        second = self.substitute(first, {X: (Y,), Y: (X,)})
        # x^d y^d = y^d x^d
        commuted = self.substitute(self.axiom(COM), {X: power(X, d), Y: power(Y, d)})

        proof = self.chain(self.chain(self.symmetry(second), self.symmetry(commuted)), first)
        assert proof is not None
        self._aux["equal_power"] = proof

        return proof

    def equal_power_tail(self) -> int:
        """
        y^d x1 ... x_{h-d} = x^d x1 ... x_{h-d} （h > d）を com と phi から導く。
        """

        if "equal_power_tail" in self._aux:
            return self._aux["equal_power_tail"]

        h, d = self.params.h, self.params.d
        tail, new_tail = fresh_letters(h), fresh_letters(h - d)
        mapping: dict[Letter, Letters] = {X: (X,)}
        for i, t in enumerate(tail):
            mapping[t] = (Y,) if i < d else (new_tail[i - d],)
        # x^d y^d T = y^d T
        first = self.substitute(self.axiom(PHI), mapping)
        # y^d x^d T = x^d T
        second = self.substitute(first, {X: (Y,), Y: (X,)} | {t: (t,) for t in new_tail})
        # x^d y^d T = y^d x^d T
        commuted = self.substitute(self.axiom(COM), {X: power(X, d), Y: power(Y, d)})
        commuted = self.embed(commuted, (), new_tail)

        proof = self.chain(self.chain(self.symmetry(first), commuted), second)
        assert proof is not None
        self._aux["equal_power_tail"] = proof

        return proof

    def certificate(self, root: int | None, goal: Identity) -> Certificate:
        """
        root から参照されるステップだけを残して証明書にする。

        :raises DERIVATIONError: root の恒等式が目標と一致しない場合
        """

        if root is None:
            root = self.add(Reflexivity(goal.lhs))

        if self.conclusions[root] != goal:
            raise DERIVATIONError(f"derived {self.conclusions[root]} instead of {goal}")

        keep: set[int] = set()
        stack = [root]
        while stack:
            i = stack.pop()
            if i not in keep:
                keep.add(i)
                stack.extend(_references(self.steps[i]))

        order = sorted(keep)
        remap = {old: new for new, old in enumerate(order)}

        return Certificate(self.params, tuple(_renumber(self.steps[i], remap) for i in order))


class _Deriver:
    """
    帰納法による証明の組み立て。

    :var list[int]|None measures: 帰納法の各段の不均衡な文字の数
    """

    def __init__(self, builder: _Builder, measures: list[int] | None = None) -> None:
        self.b = builder
        self.params = builder.params
        self.measures = measures

    def prove(self, identity: Identity) -> int | None:
        """
        identity の証明を積み上げ、その最後のステップ番号を返す。
        """

        lhs, rhs = identity.lhs.letters, identity.rhs.letters
        if lhs == rhs:
            return None

        unbalanced = unbalanced_letters(identity)
        if self.measures is not None:
            self.measures.append(len(unbalanced))

        if not unbalanced:
            return self.b.permute(lhs, rhs)

        h, d = self.params.h, self.params.d
        if is_long(h, identity):
            derivationLogger.debug(f"_Deriver: long {identity}")
            return self.long_case(identity, unbalanced)

        if h > d + 2 and is_uniform(h, identity):
            derivationLogger.debug(f"_Deriver: uniform {identity}")
            return self.uniform_case(identity, unbalanced)

        raise DERIVATIONError(f"{identity} is neither long nor uniform in {self.params}")

    def long_case(self, identity: Identity, unbalanced: frozenset[Letter]) -> int | None:
        left, right = occurrences(identity.lhs), occurrences(identity.rhs)
        y = min(unbalanced)
        # 左辺に多く現れる向きにそろえる
        if left[y] < right[y]:
            return self.b.symmetry(self.long_case(identity.swapped(), unbalanced))

        if len(unbalanced) == 1:
            return self.single_letter(identity, y)

        x = min(unbalanced - {y})
        return self.replace_letter(identity, y, x)

    def single_letter(self, identity: Identity, x: Letter) -> int | None:
        """
        x^{kd} x^t w = x^t w を phi から導く。（x 以外の文字は均衡）
        """

        h, d = self.params.h, self.params.d
        s, t = occurrences(identity.lhs)[x], occurrences(identity.rhs)[x]
        k = (s - t) // d

        rest = (x,) * t + tuple(c for c in identity.rhs.letters if c != x)
        target = (x,) * (k * d) + rest

        mapping: dict[Letter, Letters] = {X: (x,) * k}
        for i, letter in enumerate(fresh_letters(h)):
            mapping[letter] = (rest[i],)
        instance = self.b.embed(self.b.substitute(self.b.axiom(PHI), mapping), (), rest[h:])

        to_target = self.b.permute(identity.lhs.letters, target)
        from_rest = self.b.permute(rest, identity.rhs.letters)

        return self.b.chain(self.b.chain(to_target, instance), from_rest)

    def replace_power(self, y: Letter, x: Letter, rest: Letters) -> int:
        """
        y^d R = x^d R を補助の恒等式から導く。
        """

        h, d = self.params.h, self.params.d
        if h <= d:
            instance = self.b.substitute(self.b.equal_power(), {X: (y,), Y: (x,)})
            return self.b.embed(instance, (), rest)

        mapping: dict[Letter, Letters] = {X: (x,), Y: (y,)}
        for i, letter in enumerate(fresh_letters(h - d)):
            mapping[letter] = (rest[i],)
        instance = self.b.substitute(self.b.equal_power_tail(), mapping)

        return self.b.embed(instance, (), rest[h - d :])

    def replace_letter(self, identity: Identity, y: Letter, x: Letter) -> int | None:
        """
        左辺の y^d を x^d に置き換えることを繰り返し、 y を均衡にする。
        """

        d = self.params.d
        p, q = occurrences(identity.lhs)[y], occurrences(identity.rhs)[y]

        current = identity.lhs.letters
        proof: int | None = None
        for _ in range((p - q) // d):
            rest = _remove(current, y, d)
            to_target = self.b.permute(current, (y,) * d + rest)
            proof = self.b.chain(proof, self.b.chain(to_target, self.replace_power(y, x, rest)))
            current = (x,) * d + rest

        reduced = Identity(Word(current), identity.rhs)

        return self.b.chain(proof, self.prove(reduced))

    def uniform_case(self, identity: Identity, unbalanced: frozenset[Letter]) -> int | None:
        """
        右辺の接頭辞 x^{r+d} y^r ... を psi で x^r y^{r+d} ... に変えることを繰り返し、 x を均衡にする。
        """

        h, d = self.params.h, self.params.d
        left, right = occurrences(identity.lhs), occurrences(identity.rhs)
        r = min_unbalanced_occurrence(identity)
        x = min(c for c in unbalanced if min(left[c], right[c]) == r)
        # 左辺の x が少ない向きにそろえる
        if left[x] != r:
            return self.b.symmetry(self.uniform_case(identity.swapped(), unbalanced))

        y = min(c for c in unbalanced if left[c] > right[c])
        # psi[r] が無い（r > (h-d)/3）ときは、より小さい psi を使う
        r_psi = min(r, (h - d) // 3)
        tail = h - 3 * r_psi - d
        psi = self.b.axiom(BasisAxiom(AxiomKind.PSI, r_psi))

        current = identity.rhs.letters
        proof: int | None = None
        while current.count(x) > r:
            rest = _remove(_remove(current, x, r_psi + d), y, r_psi)
            target = (x,) * (r_psi + d) + (y,) * r_psi + rest

            mapping: dict[Letter, Letters] = {X: (x,), Y: (y,)}
            for i, letter in enumerate(fresh_letters(tail)):
                mapping[letter] = (rest[i],)
            instance = self.b.embed(self.b.substitute(psi, mapping), (), rest[tail:])

            to_target = self.b.permute(current, target)
            proof = self.b.chain(proof, self.b.chain(to_target, self.b.symmetry(instance)))
            current = (x,) * r_psi + (y,) * (r_psi + d) + rest

        reduced = Identity(identity.lhs, Word(current))

        return self.b.chain(self.prove(reduced), self.b.symmetry(proof))


def derive_balanced(identity: Identity, params: CyclicParams | None = None) -> Certificate:
    """
    均衡な恒等式を可換律だけから導く。

    :param Identity identity: 均衡な恒等式
    :param CyclicParams|None params: 証明書のパラメータ。可換律はどの C_{h,d} の基底にも含まれる。
    :return: 証明書
    :rtype: Certificate
    :raises DERIVATIONError: 均衡でない場合
    """

    if not is_balanced(identity):
        raise DERIVATIONError(f"not balanced: {identity}")

    builder = _Builder(params or CyclicParams(1, 1))

    return builder.certificate(builder.permute(identity.lhs.letters, identity.rhs.letters), identity)


def derive_aux_equal_power(p: CyclicParams) -> Certificate:
    """
    x^d = y^d を com と phi から導く。

    :param CyclicParams p: h <= d のパラメータ
    :rtype: Certificate
    :raises DERIVATIONError: h > d の場合
    """

    if p.h > p.d:
        raise DERIVATIONError(f"equal power needs h <= d: {p}")

    builder = _Builder(p)

    return builder.certificate(builder.equal_power(), aux_equal_power(p.d))


def derive_aux_equal_power_tail(p: CyclicParams) -> Certificate:
    """
    y^d x1 ... x_{h-d} = x^d x1 ... x_{h-d} を com と phi から導く。

    :param CyclicParams p: h > d のパラメータ
    :rtype: Certificate
    :raises DERIVATIONError: h <= d の場合
    """

    if p.h <= p.d:
        raise DERIVATIONError(f"equal power with tail needs h > d: {p}")

    builder = _Builder(p)

    return builder.certificate(builder.equal_power_tail(), aux_equal_power_tail(p))


def derive(p: CyclicParams, identity: Identity, measures: list[int] | None = None) -> Certificate | NotSatisfied:
    """
    C_{h,d} で成り立つ恒等式の証明書を恒等式基底から作る。

    :param CyclicParams p: パラメータ
    :param Identity identity: 恒等式
    :param list[int]|None measures: 指定すると、帰納法の各段の不均衡な文字の数を追加する
    :return: 証明書。成り立たない場合は ``NotSatisfied`` 。
    :rtype: Certificate | NotSatisfied
    """

    verdict = decide(p, identity)
    if not verdict.holds:
        derivationLogger.debug(f"derive: {identity} does not hold in {p}: {verdict.reason}")
        return NotSatisfied(verdict)

    builder = _Builder(p)
    cert = builder.certificate(_Deriver(builder, measures).prove(identity), identity)

    derivationLogger.debug(f"derive: {identity} in {p} with {len(cert)} steps")

    return cert


if __name__ == "__main__":
    print(__file__)
