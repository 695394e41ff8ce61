#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rebact::protocol {

enum class Format { Textcraft, Webshop, Alfworld };

std::string to_string(Format f);
std::optional<Format> parse_format(std::string_view name);

/// Reflection window for a format: webshop takes the configured window,
/// textcraft and alfworld are fixed at one previous action.
int effective_window(Format f, int configured);

enum class Verdict { Correct, Wrong };

/// Parsed model reply: one verdict (and modified action) per reflected
/// previous action, plus the proposed next action.
struct ReflectionDecision {
    std::vector<Verdict> verdicts;
    std::vector<std::string> modified; // parallel to verdicts
    std::string next_action;
    std::string raw;

    bool equivalent(const ReflectionDecision &other) const {
        return verdicts == other.verdicts && modified == other.modified &&
               next_action == other.next_action;
    }
};

struct FormatError {
    std::string message;
};

/// Strict parse of a model response. Surrounding whitespace and the case of
/// the correct/wrong fill-in are tolerated; anchors and punctuation are not.
/// Zero verdict groups is valid (first step); the caller checks the count
/// against the expected window.
std::variant<ReflectionDecision, FormatError> parse_reflection(const std::string &text,
                                                               Format format);

/// Canonical response text; parse_reflection maps it back to an equivalent
/// decision. `previous_actions` fills the echoed action slots (defaults to
/// the modified actions).
std::string render_reflection(const ReflectionDecision &decision, Format format,
                              const std::vector<std::string> &previous_actions = {});

enum class ExecSource { Next, Modified };
enum class Violation { ModifiedEqualsPrevious, CorrectButDifferent };

/// The single action a decision designates for execution.
struct ExecChoice {
    ExecSource source = ExecSource::Next;
    std::string action;
    int slot = -1; // reflected slot index when source == Modified
    std::vector<Violation> violations;
};

/// The execution rule: the earliest wrong verdict whose modified action
/// differs from the corresponding previous action executes the modified
/// action; otherwise the next action executes. A wrong verdict whose
/// modification equals the previous action is flagged, not executed.
/// `previous_actions` are the reflected actions, oldest first.
ExecChoice decide_executed_action(const ReflectionDecision &decision,
                                  const std::vector<std::string> &previous_actions);

/// Prompt template: verbatim text with slots {previous_action}, {window},
/// {exemplars}, {task}, {history}. Lines of the form <<reflect>>, <<first>>
/// and <<end>> delimit blocks rendered only when the reflection window is
/// non-empty (reflect) or empty (first). A line containing
/// {previous_action} is emitted once per reflected action.
class PromptTemplate {
public:
    static PromptTemplate from_text(std::string text);
    static PromptTemplate load_file(const std::string &path);

    /// Shipped REBACT templates for the three formats.
    static const PromptTemplate &builtin(Format f);

    /// Single-action baseline template (textcraft environment).
    static const PromptTemplate &builtin_react();

    struct Rendered {
        std::string text;
        int window_used = 0;
        bool window_clamped = false;
    };

    Rendered render(const std::string &exemplars, const std::string &task,
                    const std::vector<std::pair<std::string, std::string>> &history,
                    int window) const;

    const std::string &text() const { return text_; }

private:
    std::string text_;
};

/// "> action" / observation lines, the history form used in prompts.
std::string render_history(const std::vector<std::pair<std::string, std::string>> &history);

/// One-line reply-format reminder appended to the prompt on a parse retry.
std::string format_reminder(Format format, bool has_window);
std::string react_format_reminder();

/// First non-empty line of a baseline response (leading "> " stripped).
std::variant<std::string, FormatError> parse_action_line(const std::string &text);

} // namespace rebact::protocol
