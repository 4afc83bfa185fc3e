#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace folio {

enum class MotionKind { Word, Back, End };  // w b e

enum class CommandKind { Motion, Delete, PasteBefore, PasteAfter, Undo };

struct Command {
    CommandKind kind;
    MotionKind motion = MotionKind::Word;
    int count = 1;
    bool operator==(const Command&) const = default;
};

// `count? op` or `count? d count? motion`; delete counts multiply.
std::vector<Command> parse_script(std::string_view script);

struct ApplyResult {
    bool warned = false;
    std::string message;
};

struct EditRecord {
    enum class Op { Insert, Erase };
    Op op;
    std::size_t offset;  // code points
    std::u32string text;
    std::size_t cursor_before = 0;
    std::size_t cursor_after = 0;
    std::uint64_t group = 0;  // 0 = standalone record
};

class Buffer {
  public:
    explicit Buffer(std::string_view utf8, std::size_t cursor = 0);

    std::string text() const;
    const std::u32string& rope() const { return text_; }
    std::size_t cursor() const { return cursor_; }
    void set_cursor(std::size_t c);

    ApplyResult apply(const Command& cmd);
    std::vector<ApplyResult> run_script(std::string_view script);

    const std::deque<std::u32string>& kill_ring() const { return kill_; }
    const std::vector<EditRecord>& history() const { return history_; }

    // Inclusive rectangle: 1-based lines, 0-based code-point columns.
    // Ranges falling past a short line yield empty cells. Not a kill.
    std::vector<std::string> rect_cut(int top, int left, int bottom,
                                      int right);
    void rect_paste(int line, int col, const std::vector<std::string>& block);

    static constexpr std::size_t kKillRingCap = 16;

  private:
    std::size_t max_cursor() const;
    std::size_t motion_target(MotionKind kind, int count) const;
    void record(EditRecord::Op op, std::size_t offset, std::u32string text,
                std::size_t cursor_before, std::uint64_t group);
    ApplyResult do_delete(const Command& cmd);
    ApplyResult do_paste(const Command& cmd, bool before);
    ApplyResult undo_one();

    std::u32string text_;
    std::size_t cursor_ = 0;
    std::deque<std::u32string> kill_;
    std::vector<EditRecord> history_;
    std::optional<std::size_t> undo_walk_;
    std::uint64_t next_group_ = 1;
};

}  // namespace folio
