function init() {
  return 'board';
}
