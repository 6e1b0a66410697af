var count = 0;
var label = "none";
var read = function () {
  return label + ":" + count;
};
function set_count(value) {
  count = value;
}
function set_label(value) {
  label = value;
}
export {count, label, read, set_count, set_label};
