#include "folio/editcore.hpp"

#include <algorithm>

#include "folio/errors.hpp"
#include "folio/unicode.hpp"

namespace folio {
namespace {

enum class CharClass { Space, Word, Punct };

CharClass classify(char32_t c) {
    if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r')
        return CharClass::Space;
    if (c == U'_' || (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') ||
        (c >= U'A' && c <= U'Z') || c > 127)
        return CharClass::Word;
    return CharClass::Punct;
}

std::size_t next_token_start(const std::u32string& s, std::size_t p) {
    const std::size_t n = s.size();
    if (p >= n) return n;
    const CharClass cls = classify(s[p]);
    if (cls != CharClass::Space)
        while (p < n && classify(s[p]) == cls) ++p;
    while (p < n && classify(s[p]) == CharClass::Space) ++p;
    return p;
}

std::size_t prev_token_start(const std::u32string& s, std::size_t p) {
    if (p == 0) return 0;
    std::size_t q = p - 1;
    while (q > 0 && classify(s[q]) == CharClass::Space) --q;
    if (classify(s[q]) == CharClass::Space) return 0;
    const CharClass cls = classify(s[q]);
    while (q > 0 && classify(s[q - 1]) == cls) --q;
    return q;
}

std::size_t next_token_end(const std::u32string& s, std::size_t p) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::size_t q = p + 1;
    while (q < n && classify(s[q]) == CharClass::Space) ++q;
    if (q >= n) return n - 1;
    const CharClass cls = classify(s[q]);
    while (q + 1 < n && classify(s[q + 1]) == cls) ++q;
    return q;
}

struct LineSpan {
    std::size_t begin, end;  // code points, newline excluded
};

std::vector<LineSpan> line_spans(const std::u32string& s) {
    std::vector<LineSpan> spans;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == U'\n') {
            spans.push_back({start, i});
            start = i + 1;
        }
    }
    return spans;
}

int parse_count(std::string_view s, std::size_t& i) {
    if (i >= s.size() || s[i] < '1' || s[i] > '9') return 1;
    long v = 0;
    const std::size_t at = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        v = v * 10 + (s[i] - '0');
        if (v > 1000000)
            throw ScriptError("count too large", at + 1);
        ++i;
    }
    return static_cast<int>(v);
}

}  // namespace

std::vector<Command> parse_script(std::string_view script) {
    std::vector<Command> out;
    std::size_t i = 0;
    while (i < script.size()) {
        const char c0 = script[i];
        if (c0 == ' ' || c0 == '\t' || c0 == '\n' || c0 == '\r') {
            ++i;
            continue;
        }
        const std::size_t at = i + 1;
        const int count = parse_count(script, i);
        if (i >= script.size())
            throw ScriptError("script ends inside a command", at);
        const char op = script[i++];
        switch (op) {
            case 'w':
                out.push_back({CommandKind::Motion, MotionKind::Word, count});
                break;
            case 'b':
                out.push_back({CommandKind::Motion, MotionKind::Back, count});
                break;
            case 'e':
                out.push_back({CommandKind::Motion, MotionKind::End, count});
                break;
            case 'P':
                out.push_back(
                    {CommandKind::PasteBefore, MotionKind::Word, count});
                break;
            case 'p':
                out.push_back(
                    {CommandKind::PasteAfter, MotionKind::Word, count});
                break;
            case 'u':
                out.push_back({CommandKind::Undo, MotionKind::Word, count});
                break;
            case 'd': {
                const int inner = parse_count(script, i);
                if (i >= script.size())
                    throw ScriptError("d needs a motion", i + 1);
                const char m = script[i++];
                MotionKind kind;
                if (m == 'w')
                    kind = MotionKind::Word;
                else if (m == 'b')
                    kind = MotionKind::Back;
                else if (m == 'e')
                    kind = MotionKind::End;
                else
                    throw ScriptError("d needs a motion", i);
                out.push_back({CommandKind::Delete, kind, count * inner});
                break;
            }
            default:
                throw ScriptError("unknown command", i);
        }
    }
    return out;
}

Buffer::Buffer(std::string_view utf8, std::size_t cursor)
    : text_(utf8_decode(utf8)) {
    set_cursor(cursor);
}

std::string Buffer::text() const { return utf8_encode(text_); }

std::size_t Buffer::max_cursor() const {
    return text_.empty() ? 0 : text_.size() - 1;
}

void Buffer::set_cursor(std::size_t c) { cursor_ = std::min(c, max_cursor()); }

std::size_t Buffer::motion_target(MotionKind kind, int count) const {
    std::size_t p = cursor_;
    for (int k = 0; k < count; ++k) {
        switch (kind) {
            case MotionKind::Word: p = next_token_start(text_, p); break;
            case MotionKind::Back: p = prev_token_start(text_, p); break;
            case MotionKind::End: p = next_token_end(text_, p); break;
        }
    }
    return p;
}

void Buffer::record(EditRecord::Op op, std::size_t offset, std::u32string text,
                    std::size_t cursor_before, std::uint64_t group) {
    EditRecord rec;
    rec.op = op;
    rec.offset = offset;
    rec.text = std::move(text);
    rec.cursor_before = cursor_before;
    rec.group = group;
    if (op == EditRecord::Op::Insert)
        text_.insert(offset, rec.text);
    else
        text_.erase(offset, rec.text.size());
    set_cursor(cursor_);
    rec.cursor_after = cursor_;
    history_.push_back(std::move(rec));
}

ApplyResult Buffer::do_delete(const Command& cmd) {
    const std::size_t before = cursor_;
    const std::size_t target = motion_target(cmd.motion, cmd.count);
    std::size_t lo = cursor_, hi = cursor_;
    switch (cmd.motion) {
        case MotionKind::Word:
            lo = cursor_;
            hi = target;
            break;
        case MotionKind::Back:
            lo = target;
            hi = cursor_;
            break;
        case MotionKind::End:
            lo = cursor_;
            hi = std::min(target + 1, text_.size());
            break;
    }
    if (hi <= lo) return {true, "nothing to delete"};
    std::u32string killed = text_.substr(lo, hi - lo);
    kill_.push_front(killed);
    if (kill_.size() > kKillRingCap) kill_.pop_back();
    cursor_ = lo;
    record(EditRecord::Op::Erase, lo, std::move(killed), before, 0);
    history_.back().cursor_after = cursor_;
    return {};
}

ApplyResult Buffer::do_paste(const Command& cmd, bool before) {
    if (kill_.empty()) return {true, "kill ring is empty"};
    std::u32string chunk;
    for (int k = 0; k < cmd.count; ++k) chunk += kill_.front();
    const std::size_t at =
        before || text_.empty() ? cursor_
                                : std::min(cursor_ + 1, text_.size());
    const std::size_t cb = cursor_;
    record(EditRecord::Op::Insert, at, chunk, cb, 0);
    cursor_ = at + chunk.size() - 1;
    history_.back().cursor_after = cursor_;
    return {};
}

ApplyResult Buffer::undo_one() {
    const std::size_t walk = undo_walk_.value_or(history_.size());
    if (walk == 0) {
        undo_walk_ = 0;
        return {true, "nothing to undo"};
    }
    const std::size_t last = walk - 1;
    std::size_t first = last;
    const std::uint64_t group = history_[last].group;
    if (group != 0)
        while (first > 0 && history_[first - 1].group == group) --first;
    const std::size_t pre_cursor = cursor_;
    const std::uint64_t inverse_group =
        last > first ? next_group_++ : 0;
    for (std::size_t k = last + 1; k-- > first;) {
        // copy: record() appends and may reallocate history_
        const EditRecord rec = history_[k];
        if (rec.op == EditRecord::Op::Insert)
            record(EditRecord::Op::Erase, rec.offset, rec.text, pre_cursor,
                   inverse_group);
        else
            record(EditRecord::Op::Insert, rec.offset, rec.text, pre_cursor,
                   inverse_group);
    }
    cursor_ = std::min(history_[first].cursor_before, max_cursor());
    for (std::size_t k = history_.size() - (last - first + 1);
         k < history_.size(); ++k)
        history_[k].cursor_after = cursor_;
    undo_walk_ = first;
    return {};
}

ApplyResult Buffer::apply(const Command& cmd) {
    if (cmd.kind != CommandKind::Undo) undo_walk_.reset();
    switch (cmd.kind) {
        case CommandKind::Motion:
            set_cursor(motion_target(cmd.motion, cmd.count));
            return {};
        case CommandKind::Delete:
            return do_delete(cmd);
        case CommandKind::PasteBefore:
            return do_paste(cmd, true);
        case CommandKind::PasteAfter:
            return do_paste(cmd, false);
        case CommandKind::Undo: {
            ApplyResult res;
            for (int k = 0; k < cmd.count; ++k) {
                res = undo_one();
                if (res.warned) break;
            }
            return res;
        }
    }
    return {};
}

std::vector<ApplyResult> Buffer::run_script(std::string_view script) {
    std::vector<ApplyResult> results;
    for (const Command& cmd : parse_script(script))
        results.push_back(apply(cmd));
    return results;
}

std::vector<std::string> Buffer::rect_cut(int top, int left, int bottom,
                                          int right) {
    const auto spans = line_spans(text_);
    const int lines = static_cast<int>(spans.size());
    if (top < 1 || bottom > lines || top > bottom)
        throw RangeError("rectangle lines outside the buffer");
    if (left < 0 || left > right)
        throw RangeError("rectangle columns are inverted");

    struct Piece {
        std::size_t begin, end;
    };
    std::vector<Piece> pieces;
    std::vector<std::string> block;
    for (int ln = top; ln <= bottom; ++ln) {
        const LineSpan sp = spans[static_cast<std::size_t>(ln - 1)];
        const std::size_t len = sp.end - sp.begin;
        const std::size_t a =
            sp.begin + std::min<std::size_t>(static_cast<std::size_t>(left),
                                             len);
        const std::size_t b =
            sp.begin +
            std::min<std::size_t>(static_cast<std::size_t>(right) + 1, len);
        pieces.push_back({a, std::max(a, b)});
        block.push_back(utf8_encode(text_.substr(a, b > a ? b - a : 0)));
    }
    const std::uint64_t group = next_group_++;
    const std::size_t cb = cursor_;
    for (std::size_t k = pieces.size(); k-- > 0;) {
        if (pieces[k].end <= pieces[k].begin) continue;
        record(EditRecord::Op::Erase, pieces[k].begin,
               text_.substr(pieces[k].begin, pieces[k].end - pieces[k].begin),
               cb, group);
    }
    undo_walk_.reset();
    return block;
}

void Buffer::rect_paste(int line, int col, const std::vector<std::string>& block) {
    if (line < 1 || col < 0)
        throw RangeError("paste target outside the buffer");
    {
        const auto spans = line_spans(text_);
        if (line > static_cast<int>(spans.size()))
            throw RangeError("paste target outside the buffer");
    }
    const std::uint64_t group = next_group_++;
    const std::size_t cb = cursor_;
    for (std::size_t k = 0; k < block.size(); ++k) {
        const std::u32string piece = utf8_decode(block[k]);
        const auto spans = line_spans(text_);
        const int target = line + static_cast<int>(k);
        if (target <= static_cast<int>(spans.size())) {
            if (piece.empty()) continue;
            const LineSpan sp = spans[static_cast<std::size_t>(target - 1)];
            const std::size_t len = sp.end - sp.begin;
            std::u32string insert;
            if (len < static_cast<std::size_t>(col))
                insert.assign(static_cast<std::size_t>(col) - len, U' ');
            insert += piece;
            const std::size_t at = sp.begin + std::min<std::size_t>(
                                                  static_cast<std::size_t>(col),
                                                  len);
            record(EditRecord::Op::Insert, at, insert, cb, group);
        } else {
            std::u32string insert = U"\n";
            if (!piece.empty()) {
                insert.append(static_cast<std::size_t>(col), U' ');
                insert += piece;
            }
            record(EditRecord::Op::Insert, text_.size(), insert, cb, group);
        }
    }
    undo_walk_.reset();
}

}  // namespace folio
