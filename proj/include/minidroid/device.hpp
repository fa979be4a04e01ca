#pragma once

#include <string>
#include <vector>

#include "minidroid/envdef.hpp"

namespace minidroid {

// The policy's coordinate head scores a 12 x 24 grid over the 1080 x 2400
// canvas. Built-in layouts snap every element center onto a cell center so
// a decoded cell center coincides with the element it targets.
inline constexpr int kGridCols = 12;
inline constexpr int kGridRows = 24;
inline constexpr int kCellW = kScreenWidth / kGridCols;    // 90
inline constexpr int kCellH = kScreenHeight / kGridRows;   // 100
inline constexpr int kNumCells = kGridCols * kGridRows;    // 288

inline Point cell_center(int col, int row) {
  return Point{col * kCellW + kCellW / 2, row * kCellH + kCellH / 2};
}

inline int cell_index(int col, int row) { return row * kGridCols + col; }

inline int cell_of_point(const Point& p) {
  int col = std::min(kGridCols - 1, std::max(0, p.x / kCellW));
  int row = std::min(kGridRows - 1, std::max(0, p.y / kCellH));
  return cell_index(col, row);
}

inline Point center_of_cell(int cell) {
  return cell_center(cell % kGridCols, cell / kGridCols);
}

// Canonical swipe gestures. All built-in swipes travel four rows.
inline constexpr int kSwipeRows = 4;
inline constexpr int kSwipeCols = 3;

// One step of a scripted expert.
struct ScriptStep {
  enum class Op {
    kClickElem,
    kLongPressElem,
    kSwipeCells,
    kTypeParam,
    kSystemButton,
    kAnswerParam,
    kTerminate,
  };

  std::string instruction;  // may contain {param} slots
  Op op = Op::kClickElem;
  std::string elem;
  int c1 = 0, r1 = 0, c2 = 0, r2 = 0;
  std::string param;
  SystemButton button = SystemButton::kBack;

  static ScriptStep click(std::string instr, std::string elem) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kClickElem;
    s.elem = std::move(elem);
    return s;
  }
  static ScriptStep long_press(std::string instr, std::string elem) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kLongPressElem;
    s.elem = std::move(elem);
    return s;
  }
  static ScriptStep swipe(std::string instr, int c1, int r1, int c2, int r2) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kSwipeCells;
    s.c1 = c1;
    s.r1 = r1;
    s.c2 = c2;
    s.r2 = r2;
    return s;
  }
  static ScriptStep type(std::string instr, std::string param) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kTypeParam;
    s.param = std::move(param);
    return s;
  }
  static ScriptStep system(std::string instr, SystemButton b) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kSystemButton;
    s.button = b;
    return s;
  }
  static ScriptStep answer(std::string instr, std::string param) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kAnswerParam;
    s.param = std::move(param);
    return s;
  }
  static ScriptStep terminate(std::string instr) {
    ScriptStep s;
    s.instruction = std::move(instr);
    s.op = Op::kTerminate;
    return s;
  }
};

// The full built-in definition plus scripted experts, one per template.
struct TaskSuite {
  EnvDefinition device;
  std::map<std::string, std::vector<ScriptStep>> experts;

  std::vector<std::string> template_ids() const {
    std::vector<std::string> out;
    for (const auto& t : device.tasks) out.push_back(t.template_id);
    return out;
  }
};

namespace detail {

inline ElementDef mk_elem(std::string id, ElementKind kind, std::string label,
                          int col, int row, int w, int h) {
  ElementDef e;
  e.element_id = std::move(id);
  e.kind = kind;
  e.label = std::move(label);
  Point c = cell_center(col, row);
  e.bbox = Rect{c.x - w / 2, c.y - h / 2, w, h};
  return e;
}

inline ElementDef app_icon(std::string id, std::string label, int col, int row,
                           std::string target) {
  ElementDef e = mk_elem(std::move(id), ElementKind::kAppIcon,
                         std::move(label), col, row, 80, 80);
  e.on_click = {RuleOp::go(std::move(target))};
  return e;
}

inline ElementDef bar_button(std::string id, std::string label, int col,
                             std::vector<RuleOp> ops) {
  ElementDef e = mk_elem(std::move(id), ElementKind::kButton, std::move(label),
                         col, 21, 150, 80);
  e.on_click = std::move(ops);
  return e;
}

inline ElementDef text_field(std::string id, std::string label, int row,
                             std::string initial_text, bool focused) {
  ElementDef e = mk_elem(std::move(id), ElementKind::kTextField,
                         std::move(label), 5, row, 900, 80);
  e.initial_state["text"] = std::move(initial_text);
  e.initial_state["focused"] = focused ? "true" : "false";
  e.on_click = {RuleOp::focus(e.element_id)};
  return e;
}

inline ElementDef backspace_key(std::string id, std::string field) {
  ElementDef e =
      mk_elem(std::move(id), ElementKind::kButton, "Backspace", 8, 15, 150, 80);
  e.on_long_press = {RuleOp::clear_text(std::move(field))};
  return e;
}

// Four visible rows bound to `list`, with a long-press context menu.
inline void add_list_rows(ScreenDef& s, const std::string& prefix,
                          const std::string& list,
                          const std::string& menu_screen) {
  for (int i = 0; i < 4; ++i) {
    ElementDef e = mk_elem(prefix + "_row" + std::to_string(i),
                           ElementKind::kListItem, "", 5, 4 + 2 * i, 900, 80);
    e.bound_list = list;
    e.list_index = i;
    if (!menu_screen.empty())
      e.on_long_press = {RuleOp::select_self(), RuleOp::go(menu_screen)};
    s.elements.push_back(std::move(e));
  }
}

inline ScreenDef item_menu(std::string id, std::string prefix,
                           std::string list, std::string back,
                           std::vector<ElementDef> extra = {}) {
  ScreenDef s;
  s.screen_id = std::move(id);
  s.back_target = back;
  s.elements.push_back(bar_button(
      prefix + "_delete_btn", "Delete", 5,
      {RuleOp::remove_selected(std::move(list)), RuleOp::go(back)}));
  s.elements.push_back(
      bar_button(prefix + "_menu_cancel", "Cancel", 2, {RuleOp::go(back)}));
  for (auto& e : extra) s.elements.push_back(std::move(e));
  return s;
}

}  // namespace detail

// Builds the six synthetic apps and the 22 built-in task templates.
inline TaskSuite builtin_suite() {
  using detail::add_list_rows;
  using detail::app_icon;
  using detail::backspace_key;
  using detail::bar_button;
  using detail::item_menu;
  using detail::mk_elem;

  EnvDefinition d;
  d.home_screen = "home";

  // --- home and app drawer ---
  {
    ScreenDef home;
    home.screen_id = "home";
    home.elements = {
        app_icon("home_recorder", "Audio Recorder", 1, 20, "recorder_main"),
        app_icon("home_notes", "Notes", 4, 20, "notes_main"),
        app_icon("home_settings", "Settings", 7, 20, "settings_main"),
        app_icon("home_files", "Files", 10, 20, "files_main"),
    };
    home.swipe_rules = {{SwipeDirection::kUp, {RuleOp::go("drawer")}}};
    d.screens.push_back(std::move(home));

    ScreenDef drawer;
    drawer.screen_id = "drawer";
    drawer.back_target = "home";
    drawer.elements = {
        app_icon("drawer_contacts", "Contacts", 1, 4, "contacts_main"),
        app_icon("drawer_messages", "Messages", 4, 4, "messages_main"),
    };
    drawer.swipe_rules = {{SwipeDirection::kDown, {RuleOp::go("home")}}};
    d.screens.push_back(std::move(drawer));
  }

  // --- audio recorder ---
  {
    ScreenDef main;
    main.screen_id = "recorder_main";
    main.back_target = "home";
    main.lists = {{"recordings", {"{@filename_decoy:21}"}}};
    add_list_rows(main, "rec", "recordings", "rec_item_menu");
    main.elements.push_back(
        bar_button("rec_record_btn", "Record", 5, {RuleOp::go("recorder_recording")}));
    main.swipe_rules = {{SwipeDirection::kUp, {RuleOp::scroll("recordings", 2)}},
                        {SwipeDirection::kDown, {RuleOp::scroll("recordings", -2)}}};
    d.screens.push_back(std::move(main));

    ScreenDef rec;
    rec.screen_id = "recorder_recording";
    rec.back_target = "recorder_main";
    rec.elements = {bar_button("rec_stop_btn", "Stop", 5, {RuleOp::go("recorder_save")})};
    d.screens.push_back(std::move(rec));

    ScreenDef save;
    save.screen_id = "recorder_save";
    save.back_target = "recorder_main";
    save.elements = {
        detail::text_field("rec_name_field", "Recording name", 13,
                           "Recording1", true),
        backspace_key("rec_backspace", "rec_name_field"),
        bar_button("rec_save_btn", "Save", 8,
                   {RuleOp::append_from("rec_name_field", "recordings"),
                    RuleOp::go("recorder_main")}),
        bar_button("rec_cancel_btn", "Cancel", 2, {RuleOp::go("recorder_main")}),
    };
    d.screens.push_back(std::move(save));

    d.screens.push_back(item_menu("rec_item_menu", "rec", "recordings",
                                  "recorder_main"));
  }

  // --- notes ---
  {
    ScreenDef main;
    main.screen_id = "notes_main";
    main.back_target = "home";
    main.lists = {{"notes", {"{@note_title_decoy:22}", "{@note_title_decoy:23}"}}};
    add_list_rows(main, "note", "notes", "note_item_menu");
    main.elements.push_back(
        bar_button("note_new_btn", "New note", 8, {RuleOp::go("note_editor")}));
    main.swipe_rules = {{SwipeDirection::kUp, {RuleOp::scroll("notes", 2)}},
                        {SwipeDirection::kDown, {RuleOp::scroll("notes", -2)}}};
    d.screens.push_back(std::move(main));

    ScreenDef editor;
    editor.screen_id = "note_editor";
    editor.back_target = "notes_main";
    editor.elements = {
        detail::text_field("note_title_field", "Title", 13, "", true),
        bar_button("note_save_btn", "Save", 8,
                   {RuleOp::append_from("note_title_field", "notes"),
                    RuleOp::go("notes_main")}),
        bar_button("note_cancel_btn", "Cancel", 2, {RuleOp::go("notes_main")}),
    };
    d.screens.push_back(std::move(editor));

    d.screens.push_back(item_menu(
        "note_item_menu", "note", "notes", "notes_main",
        {bar_button("note_rename_btn", "Rename", 8,
                    {RuleOp::copy_selected("note_rename_field"),
                     RuleOp::go("note_rename")})}));

    ScreenDef rename;
    rename.screen_id = "note_rename";
    rename.back_target = "notes_main";
    rename.elements = {
        detail::text_field("note_rename_field", "Title", 13, "", true),
        backspace_key("note_rename_backspace", "note_rename_field"),
        bar_button("note_rename_save", "Save", 8,
                   {RuleOp::remove_selected("notes"),
                    RuleOp::append_from("note_rename_field", "notes"),
                    RuleOp::go("notes_main")}),
        bar_button("note_rename_cancel", "Cancel", 2, {RuleOp::go("notes_main")}),
    };
    d.screens.push_back(std::move(rename));
  }

  // --- contacts ---
  {
    ScreenDef main;
    main.screen_id = "contacts_main";
    main.back_target = "home";
    main.lists = {{"contacts", {"{@person_name_decoy:24} {@phone:25}"}}};
    add_list_rows(main, "contact", "contacts", "contact_item_menu");
    main.elements.push_back(
        bar_button("contact_add_btn", "Add contact", 8, {RuleOp::go("contact_form")}));
    main.swipe_rules = {{SwipeDirection::kUp, {RuleOp::scroll("contacts", 2)}},
                        {SwipeDirection::kDown, {RuleOp::scroll("contacts", -2)}}};
    d.screens.push_back(std::move(main));

    ScreenDef form;
    form.screen_id = "contact_form";
    form.back_target = "contacts_main";
    form.elements = {
        detail::text_field("contact_name_field", "Name", 11, "", true),
        detail::text_field("contact_phone_field", "Phone", 13, "", false),
        bar_button("contact_save_btn", "Save", 8,
                   {RuleOp::append_join("contact_name_field",
                                        "contact_phone_field", " ", "contacts"),
                    RuleOp::go("contacts_main")}),
        bar_button("contact_cancel_btn", "Cancel", 2, {RuleOp::go("contacts_main")}),
    };
    d.screens.push_back(std::move(form));

    d.screens.push_back(
        item_menu("contact_item_menu", "contact", "contacts", "contacts_main"));
  }

  // --- messages ---
  {
    ScreenDef main;
    main.screen_id = "messages_main";
    main.back_target = "home";
    main.lists = {
        {"convos", {"{@person_name_decoy:26}: {@message_text_decoy:27}"}}};
    add_list_rows(main, "msg", "convos", "msg_item_menu");
    main.elements.push_back(
        bar_button("msg_compose_btn", "Compose", 8, {RuleOp::go("msg_compose")}));
    main.swipe_rules = {{SwipeDirection::kUp, {RuleOp::scroll("convos", 2)}},
                        {SwipeDirection::kDown, {RuleOp::scroll("convos", -2)}}};
    d.screens.push_back(std::move(main));

    ScreenDef compose;
    compose.screen_id = "msg_compose";
    compose.back_target = "messages_main";
    compose.elements = {
        detail::text_field("msg_to_field", "To", 11, "", true),
        detail::text_field("msg_body_field", "Message", 13, "", false),
        bar_button("msg_send_btn", "Send", 8,
                   {RuleOp::append_join("msg_to_field", "msg_body_field", ": ",
                                        "convos"),
                    RuleOp::go("messages_main")}),
        bar_button("msg_cancel_btn", "Cancel", 2, {RuleOp::go("messages_main")}),
    };
    d.screens.push_back(std::move(compose));

    d.screens.push_back(
        item_menu("msg_item_menu", "msg", "convos", "messages_main"));
  }

  // --- settings ---
  {
    ScreenDef main;
    main.screen_id = "settings_main";
    main.back_target = "home";
    auto toggle_row = [](std::string id, std::string label, int row,
                         std::string initial_on) {
      ElementDef e = mk_elem(std::move(id), ElementKind::kToggle,
                             std::move(label), 5, row, 900, 80);
      e.initial_state["on"] = std::move(initial_on);
      e.on_click = {RuleOp::toggle(e.element_id)};
      return e;
    };
    main.elements = {
        toggle_row("wifi_toggle", "Wi-Fi", 4, "{@coin:31}"),
        toggle_row("bt_toggle", "Bluetooth", 6, "{@coin:32}"),
        toggle_row("airplane_toggle", "Airplane mode", 8, "{@coin:33}"),
        toggle_row("location_toggle", "Location", 10, "{@coin:34}"),
    };
    ElementDef about = mk_elem("settings_about_row", ElementKind::kListItem,
                               "About device", 5, 12, 900, 80);
    about.on_click = {RuleOp::go("settings_about")};
    main.elements.push_back(std::move(about));
    d.screens.push_back(std::move(main));

    ScreenDef aboutscr;
    aboutscr.screen_id = "settings_about";
    aboutscr.back_target = "settings_main";
    aboutscr.elements = {mk_elem("about_device_name", ElementKind::kIcon,
                                 "Device name: {@device_name:35}", 5, 6, 900,
                                 80)};
    d.screens.push_back(std::move(aboutscr));
  }

  // --- files ---
  {
    ScreenDef main;
    main.screen_id = "files_main";
    main.back_target = "home";
    main.lists = {{"files",
                   {"{@text_file_decoy:41} ({@size_kb:42} KB)",
                    "{@text_file_decoy:43} ({@size_kb:44} KB)",
                    "{@text_file_decoy:45} ({@size_kb:46} KB)"}}};
    add_list_rows(main, "file", "files", "file_item_menu");
    main.swipe_rules = {{SwipeDirection::kUp, {RuleOp::scroll("files", 2)}},
                        {SwipeDirection::kDown, {RuleOp::scroll("files", -2)}}};
    d.screens.push_back(std::move(main));

    d.screens.push_back(item_menu("file_item_menu", "file", "files", "files_main"));
  }

  // --- task templates and their scripted experts ---
  TaskSuite suite;
  std::map<std::string, std::vector<ScriptStep>>& experts = suite.experts;

  auto add_task = [&](TaskDef t, std::vector<ScriptStep> script) {
    experts[t.template_id] = std::move(script);
    d.tasks.push_back(std::move(t));
  };

  const ScriptStep open_recorder = ScriptStep::click(
      "Tap the \"Audio Recorder\" app icon on the home screen.", "home_recorder");
  const ScriptStep open_notes = ScriptStep::click(
      "Tap the \"Notes\" app icon on the home screen.", "home_notes");
  const ScriptStep open_settings = ScriptStep::click(
      "Tap the \"Settings\" app icon on the home screen.", "home_settings");
  const ScriptStep open_files = ScriptStep::click(
      "Tap the \"Files\" app icon on the home screen.", "home_files");
  const ScriptStep open_drawer = ScriptStep::swipe(
      "Swipe up on the home screen to open the app drawer.", 4, 20, 4, 16);
  const ScriptStep open_contacts = ScriptStep::click(
      "Tap the \"Contacts\" app icon in the app drawer.", "drawer_contacts");
  const ScriptStep open_messages = ScriptStep::click(
      "Tap the \"Messages\" app icon in the app drawer.", "drawer_messages");
  const ScriptStep scroll_files = ScriptStep::swipe(
      "Swipe up on the file list to scroll down.", 5, 8, 5, 4);
  const ScriptStep finish = ScriptStep::terminate(
      "The task is complete, terminate the episode with status success.");

  {
    TaskDef t;
    t.template_id = "recorder_save_named";
    t.goal_template =
        "Record an audio clip using the recorder app and save it as "
        "\"{filename}\".";
    t.difficulty = Difficulty::kHard;
    t.params = {{"filename", "filename"}};
    t.success = {{SuccessClause::Kind::kListContains, "recordings", "", "", "",
                  "{filename}"}};
    add_task(t, {open_recorder,
                 ScriptStep::click("Tap the \"Record\" button to start recording.",
                                   "rec_record_btn"),
                 ScriptStep::click("Tap the \"Stop\" button to finish the recording.",
                                   "rec_stop_btn"),
                 ScriptStep::long_press(
                     "Long press the \"Backspace\" key to clear the name field.",
                     "rec_backspace"),
                 ScriptStep::type("Type \"{filename}\" into the name field.",
                                  "filename"),
                 ScriptStep::click("Tap the \"Save\" button to save the recording.",
                                   "rec_save_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "recorder_quick";
    t.goal_template =
        "Make a recording in the recorder app and save it under the default "
        "name.";
    t.difficulty = Difficulty::kEasy;
    t.success = {{SuccessClause::Kind::kListContains, "recordings", "", "", "",
                  "Recording1"}};
    add_task(t, {open_recorder,
                 ScriptStep::click("Tap the \"Record\" button to start recording.",
                                   "rec_record_btn"),
                 ScriptStep::click("Tap the \"Stop\" button to finish the recording.",
                                   "rec_stop_btn"),
                 ScriptStep::click("Tap the \"Save\" button to keep the default name.",
                                   "rec_save_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "recorder_delete";
    t.goal_template = "Delete the recording \"{filename}\" in the recorder app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"filename", "filename"}};
    t.initial = {{"recorder_main", "", "recordings", "", "",
                  {"{filename}", "{@filename_decoy:51}"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "recordings", "", "",
                  "", "{filename}"}};
    add_task(t, {open_recorder,
                 ScriptStep::long_press(
                     "Long press the recording \"{filename}\" in the list.",
                     "rec_row0"),
                 ScriptStep::click("Tap the \"Delete\" button to remove the recording.",
                                   "rec_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "note_create";
    t.goal_template = "Create a note titled \"{title}\" in the notes app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"title", "note_title"}};
    t.success = {{SuccessClause::Kind::kListContains, "notes", "", "", "",
                  "{title}"}};
    add_task(t, {open_notes,
                 ScriptStep::click("Tap the \"New note\" button.", "note_new_btn"),
                 ScriptStep::type("Type \"{title}\" into the title field.", "title"),
                 ScriptStep::click("Tap the \"Save\" button to store the note.",
                                   "note_save_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "note_delete";
    t.goal_template = "Delete the note titled \"{title}\" from the notes app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"title", "note_title"}};
    t.initial = {{"notes_main", "", "notes", "", "",
                  {"{title}", "{@note_title_decoy:52}", "{@note_title_decoy:53}"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "notes", "", "", "",
                  "{title}"}};
    add_task(t, {open_notes,
                 ScriptStep::long_press(
                     "Long press the note \"{title}\" in the list.", "note_row0"),
                 ScriptStep::click("Tap the \"Delete\" button.", "note_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "note_rename";
    t.goal_template =
        "Rename the note \"{title}\" to \"{new_title}\" in the notes app.";
    t.difficulty = Difficulty::kHard;
    t.params = {{"title", "note_title"}, {"new_title", "note_title"}};
    t.initial = {{"notes_main", "", "notes", "", "",
                  {"{title}", "{@note_title_decoy:54}"}}};
    t.success = {{SuccessClause::Kind::kListContains, "notes", "", "", "",
                  "{new_title}"},
                 {SuccessClause::Kind::kListNotContains, "notes", "", "", "",
                  "{title}"}};
    add_task(t, {open_notes,
                 ScriptStep::long_press(
                     "Long press the note \"{title}\" in the list.", "note_row0"),
                 ScriptStep::click("Tap the \"Rename\" button.", "note_rename_btn"),
                 ScriptStep::long_press(
                     "Long press the \"Backspace\" key to clear the title field.",
                     "note_rename_backspace"),
                 ScriptStep::type("Type \"{new_title}\" into the title field.",
                                  "new_title"),
                 ScriptStep::click("Tap the \"Save\" button to apply the new title.",
                                   "note_rename_save"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "note_check_first";
    t.goal_template =
        "Open the notes app and report the title of the first note, "
        "\"{title}\".";
    t.difficulty = Difficulty::kEasy;
    t.params = {{"title", "note_title"}};
    t.initial = {{"notes_main", "", "notes", "", "",
                  {"{title}", "{@note_title_decoy:55}"}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "", "{title}"}};
    add_task(t, {open_notes,
                 ScriptStep::answer("Answer with the note title \"{title}\".",
                                    "title")});
  }
  {
    TaskDef t;
    t.template_id = "contact_add";
    t.goal_template =
        "Add a new contact named {name} with phone number {phone}.";
    t.difficulty = Difficulty::kHard;
    t.params = {{"name", "person_name"}, {"phone", "phone"}};
    t.success = {{SuccessClause::Kind::kListContains, "contacts", "", "", "",
                  "{name} {phone}"}};
    add_task(t, {open_drawer, open_contacts,
                 ScriptStep::click("Tap the \"Add contact\" button.",
                                   "contact_add_btn"),
                 ScriptStep::type("Type \"{name}\" into the name field.", "name"),
                 ScriptStep::click("Tap the \"Phone\" field to focus it.",
                                   "contact_phone_field"),
                 ScriptStep::type("Type \"{phone}\" into the phone field.",
                                  "phone"),
                 ScriptStep::click("Tap the \"Save\" button to store the contact.",
                                   "contact_save_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "contact_delete";
    t.goal_template =
        "Delete the contact entry \"{name} {phone}\" from the contacts app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"name", "person_name"}, {"phone", "phone"}};
    t.initial = {{"contacts_main", "", "contacts", "", "",
                  {"{name} {phone}", "{@person_name_decoy:56} {@phone:57}"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "contacts", "", "",
                  "", "{name} {phone}"}};
    add_task(t, {open_drawer, open_contacts,
                 ScriptStep::long_press(
                     "Long press the contact \"{name}\" in the list.",
                     "contact_row0"),
                 ScriptStep::click("Tap the \"Delete\" button.",
                                   "contact_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "contact_phone_answer";
    t.goal_template =
        "Find {name} in the contacts app and report the phone number {phone}.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"name", "person_name"}, {"phone", "phone"}};
    t.initial = {{"contacts_main", "", "contacts", "", "",
                  {"{name} {phone}", "{@person_name_decoy:58} {@phone:59}"}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "", "{phone}"}};
    add_task(t, {open_drawer, open_contacts,
                 ScriptStep::answer("Answer with the phone number \"{phone}\".",
                                    "phone")});
  }
  {
    TaskDef t;
    t.template_id = "msg_send";
    t.goal_template =
        "Send the message \"{text}\" to {name} using the messages app.";
    t.difficulty = Difficulty::kHard;
    t.params = {{"name", "person_name"}, {"text", "message_text"}};
    t.success = {{SuccessClause::Kind::kListContains, "convos", "", "", "",
                  "{name}: {text}"}};
    add_task(t, {open_drawer, open_messages,
                 ScriptStep::click("Tap the \"Compose\" button.",
                                   "msg_compose_btn"),
                 ScriptStep::type("Type \"{name}\" into the \"To\" field.",
                                  "name"),
                 ScriptStep::click("Tap the \"Message\" field to focus it.",
                                   "msg_body_field"),
                 ScriptStep::type("Type \"{text}\" into the message field.",
                                  "text"),
                 ScriptStep::click("Tap the \"Send\" button.", "msg_send_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "msg_read_answer";
    t.goal_template =
        "Check the messages app and report the last message from {name}, "
        "which reads \"{text}\".";
    t.difficulty = Difficulty::kEasy;
    t.params = {{"name", "person_name"}, {"text", "message_text"}};
    t.initial = {{"messages_main", "", "convos", "", "",
                  {"{name}: {text}",
                   "{@person_name_decoy:60}: {@message_text_decoy:61}"}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "", "{text}"}};
    add_task(t, {open_drawer, open_messages,
                 ScriptStep::answer("Answer with the message text \"{text}\".",
                                    "text")});
  }
  {
    TaskDef t;
    t.template_id = "msg_clear";
    t.goal_template =
        "Delete the conversation \"{name}: {text}\" in the messages app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"name", "person_name"}, {"text", "message_text"}};
    t.initial = {{"messages_main", "", "convos", "", "",
                  {"{name}: {text}",
                   "{@person_name_decoy:62}: {@message_text_decoy:63}"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "convos", "", "", "",
                  "{name}: {text}"}};
    add_task(t, {open_drawer, open_messages,
                 ScriptStep::long_press(
                     "Long press the conversation from \"{name}\".", "msg_row0"),
                 ScriptStep::click("Tap the \"Delete\" button.", "msg_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "wifi_enable";
    t.goal_template = "Turn on Wi-Fi in the settings app.";
    t.difficulty = Difficulty::kEasy;
    t.initial = {{"settings_main", "wifi_toggle", "", "on", "false", {}}};
    t.success = {{SuccessClause::Kind::kStateEquals, "", "settings_main",
                  "wifi_toggle", "on", "true"}};
    add_task(t, {open_settings,
                 ScriptStep::click("Tap the \"Wi-Fi\" toggle to switch it on.",
                                   "wifi_toggle"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "bluetooth_disable";
    t.goal_template = "Turn off Bluetooth in the settings app.";
    t.difficulty = Difficulty::kEasy;
    t.initial = {{"settings_main", "bt_toggle", "", "on", "true", {}}};
    t.success = {{SuccessClause::Kind::kStateEquals, "", "settings_main",
                  "bt_toggle", "on", "false"}};
    add_task(t, {open_settings,
                 ScriptStep::click("Tap the \"Bluetooth\" toggle to switch it off.",
                                   "bt_toggle"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "airplane_home";
    t.goal_template = "Enable airplane mode, then return to the home screen.";
    t.difficulty = Difficulty::kMedium;
    t.initial = {{"settings_main", "airplane_toggle", "", "on", "false", {}}};
    t.success = {{SuccessClause::Kind::kStateEquals, "", "settings_main",
                  "airplane_toggle", "on", "true"},
                 {SuccessClause::Kind::kScreenIs, "", "", "", "", "home"}};
    add_task(t, {open_settings,
                 ScriptStep::click(
                     "Tap the \"Airplane mode\" toggle to switch it on.",
                     "airplane_toggle"),
                 ScriptStep::system(
                     "Navigate back to the home screen using the home button.",
                     SystemButton::kHome),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "device_name_answer";
    t.goal_template =
        "Open the About screen in settings and report the device name "
        "\"{device_name}\".";
    t.difficulty = Difficulty::kEasy;
    t.params = {{"device_name", "device_name"}};
    t.initial = {{"settings_about", "about_device_name", "", "label",
                  "Device name: {device_name}", {}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "",
                  "{device_name}"}};
    add_task(t, {open_settings,
                 ScriptStep::click("Tap the \"About device\" row.",
                                   "settings_about_row"),
                 ScriptStep::answer(
                     "Answer with the device name \"{device_name}\".",
                     "device_name")});
  }
  {
    TaskDef t;
    t.template_id = "radios_enable";
    t.goal_template = "Turn on both Wi-Fi and Location in the settings app.";
    t.difficulty = Difficulty::kMedium;
    t.initial = {{"settings_main", "wifi_toggle", "", "on", "false", {}},
                 {"settings_main", "location_toggle", "", "on", "false", {}}};
    t.success = {{SuccessClause::Kind::kStateEquals, "", "settings_main",
                  "wifi_toggle", "on", "true"},
                 {SuccessClause::Kind::kStateEquals, "", "settings_main",
                  "location_toggle", "on", "true"}};
    add_task(t, {open_settings,
                 ScriptStep::click("Tap the \"Wi-Fi\" toggle to switch it on.",
                                   "wifi_toggle"),
                 ScriptStep::click("Tap the \"Location\" toggle to switch it on.",
                                   "location_toggle"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "file_delete";
    t.goal_template =
        "Delete the file \"{fname} ({size} KB)\" using the files app.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"fname", "text_file"}, {"size", "size_kb"}};
    t.initial = {{"files_main", "", "files", "", "",
                  {"{fname} ({size} KB)",
                   "{@text_file_decoy:64} ({@size_kb:65} KB)",
                   "{@text_file_decoy:66} ({@size_kb:67} KB)"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "files", "", "", "",
                  "{fname} ({size} KB)"}};
    add_task(t, {open_files,
                 ScriptStep::long_press(
                     "Long press the file \"{fname}\" in the list.", "file_row0"),
                 ScriptStep::click("Tap the \"Delete\" button.", "file_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "file_scroll_delete";
    t.goal_template =
        "Scroll down in the files app and delete \"{fname} ({size} KB)\".";
    t.difficulty = Difficulty::kHard;
    t.params = {{"fname", "text_file"}, {"size", "size_kb"}};
    t.initial = {{"files_main", "", "files", "", "",
                  {"{@text_file_decoy:68} ({@size_kb:69} KB)",
                   "{@text_file_decoy:70} ({@size_kb:71} KB)",
                   "{@text_file_decoy:72} ({@size_kb:73} KB)",
                   "{@text_file_decoy:74} ({@size_kb:75} KB)",
                   "{@text_file_decoy:76} ({@size_kb:77} KB)",
                   "{fname} ({size} KB)"}}};
    t.success = {{SuccessClause::Kind::kListNotContains, "files", "", "", "",
                  "{fname} ({size} KB)"}};
    add_task(t, {open_files, scroll_files,
                 ScriptStep::long_press(
                     "Long press the file \"{fname}\" in the list.", "file_row3"),
                 ScriptStep::click("Tap the \"Delete\" button.", "file_delete_btn"),
                 finish});
  }
  {
    TaskDef t;
    t.template_id = "file_size_answer";
    t.goal_template = "Report the size of \"{fname}\", which is {size} KB.";
    t.difficulty = Difficulty::kEasy;
    t.params = {{"fname", "text_file"}, {"size", "size_kb"}};
    t.initial = {{"files_main", "", "files", "", "",
                  {"{fname} ({size} KB)",
                   "{@text_file_decoy:78} ({@size_kb:79} KB)"}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "", "{size}"}};
    add_task(t, {open_files,
                 ScriptStep::answer("Answer with the file size \"{size}\".",
                                    "size")});
  }
  {
    TaskDef t;
    t.template_id = "file_scroll_size";
    t.goal_template =
        "Scroll the files list and report the size of \"{fname}\", which is "
        "{size} KB.";
    t.difficulty = Difficulty::kMedium;
    t.params = {{"fname", "text_file"}, {"size", "size_kb"}};
    t.initial = {{"files_main", "", "files", "", "",
                  {"{@text_file_decoy:80} ({@size_kb:81} KB)",
                   "{@text_file_decoy:82} ({@size_kb:83} KB)",
                   "{@text_file_decoy:84} ({@size_kb:85} KB)",
                   "{@text_file_decoy:86} ({@size_kb:87} KB)",
                   "{fname} ({size} KB)"}}};
    t.success = {{SuccessClause::Kind::kAnswerIs, "", "", "", "", "{size}"}};
    add_task(t, {open_files, scroll_files,
                 ScriptStep::answer("Answer with the file size \"{size}\".",
                                    "size")});
  }

  suite.device = std::move(d);
  validate_definition(suite.device);
  return suite;
}

}  // namespace minidroid
